#include "moritoric/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "moritoric/constructions.hpp"
#include "moritoric/divisor.hpp"
#include "moritoric/error.hpp"
#include "moritoric/fan.hpp"
#include "moritoric/mori.hpp"
#include "moritoric/serialization.hpp"

namespace moritoric::cli {

namespace {

using io::Json;

struct Outcome {
  Json report;
  int code = kOk;
};

std::string read_text(const std::string& path, std::istream& in) {
  if (path == "-") {
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  }
  std::ifstream file(path);
  if (!file) throw Error(ErrorKind::InvalidInput, "cannot read '" + path + "'");
  std::ostringstream buf;
  buf << file.rdbuf();
  return buf.str();
}

Json parse_json(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::InvalidInput, what + " is not valid JSON: " + e.what());
  }
}

Fan read_fan(const std::string& path, std::istream& in) {
  return io::fan_from_json(parse_json(read_text(path, in), "fan document"));
}

void require_valid(const Fan& f) {
  auto problems = validate_fan(f);
  if (!problems.empty()) throw Error(ErrorKind::InvalidFan, problems.front().message);
}

Fan read_valid_fan(const std::string& path, std::istream& in) {
  Fan f = read_fan(path, in);
  require_valid(f);
  return f;
}

// A divisor argument is a file holding a divisor document, inline JSON, or a
// comma-separated list of rationals. Empty means the zero divisor.
ToricDivisor read_divisor(const std::string& arg, std::size_t rays, std::istream& in) {
  if (arg.empty()) return ToricDivisor::zero(rays);
  ToricDivisor d;
  if (arg == "-" || std::filesystem::is_regular_file(arg)) {
    d = io::divisor_from_json(parse_json(read_text(arg, in), "divisor document"));
  } else if (arg.front() == '[' || arg.front() == '{') {
    d = io::divisor_from_json(parse_json(arg, "divisor"));
  } else {
    std::stringstream ss(arg);
    std::string item;
    while (std::getline(ss, item, ',')) d.coeffs.push_back(io::parse_rational(item));
  }
  if (d.size() != rays)
    throw Error(ErrorKind::InvalidInput, "divisor has " + std::to_string(d.size()) + " coefficients, fan has " +
                                             std::to_string(rays) + " rays");
  return d;
}

std::uint64_t parse_seed(const std::string& text) {
  try {
    std::size_t used = 0;
    unsigned long long v = std::stoull(text, &used);
    if (used == text.size() && text.front() != '-') return v;
  } catch (const std::exception&) {
  }
  throw Error(ErrorKind::InvalidInput, "seed must be a nonnegative integer, got '" + text + "'");
}

std::uint64_t default_seed() {
  const char* env = std::getenv("MORITORIC_SEED");
  return env && *env ? parse_seed(env) : 0;
}

Json wall_json(const Wall& w) { return {{"tau", io::to_json(w.tau)}, {"left", w.left}, {"right", w.right}}; }

Outcome cmd_validate(const std::string& path, std::istream& in) {
  Fan f = read_fan(path, in);
  auto problems = validate_fan(f);
  Json list = Json::array();
  for (const auto& v : problems) list.push_back({{"kind", v.kind}, {"message", v.message}});
  if (problems.empty()) return {{{"valid", true}, {"violations", list}}, kOk};
  return {{{"error", to_string(ErrorKind::InvalidFan)}, {"detail", problems.front().message}, {"valid", false},
           {"violations", list}},
          kInvalidInput};
}

Outcome cmd_info(const std::string& path, std::istream& in) {
  Fan f = read_valid_fan(path, in);
  Json out = {{"dim", f.dim()}, {"rays", f.num_rays()}, {"cones", f.num_cones()}};
  out["simplicial"] = is_simplicial(f);
  out["smooth"] = is_smooth(f);
  const bool complete = is_complete(f);
  out["complete"] = complete;
  out["projective_space"] = is_projective_space(f);
  if (complete) {
    out["projective"] = is_projective(f).has_value();
    out["picard_rank"] = mori_cone(f).picard_rank;
    ToricDivisor anti = Rational(-1) * canonical_divisor(f);
    out["fano"] = q_cartier_data(f, anti).has_value() && is_ample(f, anti);
  } else {
    out["projective"] = nullptr;
    out["picard_rank"] = nullptr;
    out["fano"] = nullptr;
  }
  return {out};
}

Outcome cmd_wps(const std::vector<std::string>& weights) {
  std::vector<Integer> w;
  for (const auto& s : weights) {
    Rational q = io::parse_rational(s);
    if (q.get_den() != 1) throw Error(ErrorKind::InvalidInput, "weights must be integers");
    w.push_back(q.get_num());
  }
  Fan f = weighted_projective(w);
  Json out = io::fan_to_json(f);
  out["normalized_weights"] = io::to_json(normalize_weights(w));
  out["distinguished_wall"] = io::to_json(wps_distinguished_wall(w));
  return {out};
}

Outcome cmd_fano(const std::string& rays_file, std::istream& in) {
  Json doc = parse_json(read_text(rays_file, in), "rays file");
  const Json& list = doc.is_object() && doc.contains("rays") ? doc.at("rays") : doc;
  if (!list.is_array()) throw Error(ErrorKind::InvalidInput, "rays file must hold an array of vectors");
  std::vector<LatticeVector> vectors;
  for (const auto& r : list) {
    if (!r.is_array()) throw Error(ErrorKind::InvalidInput, "each ray must be an array of integers");
    LatticeVector v;
    for (const auto& x : r) v.push_back(io::integer_from_json(x));
    vectors.push_back(std::move(v));
  }
  auto fano = fano_rho_one(vectors);
  Json out = {{"fan", io::fan_to_json(fano.fan)}, {"relation", io::to_json(fano.relation)}};
  const bool pn = is_projective_space(fano.fan);
  out["projective_space"] = pn;
  auto wall = find_short_wall(fano.fan);
  if (wall) {
    out["short_wall"] = {{"index", wall->index}, {"wall", wall_json(wall->wall)}, {"length", io::to_json(wall->length)}};
  } else {
    out["short_wall"] = nullptr;
  }
  return {out, wall.has_value() != pn ? kOk : kPropertyViolated};
}

Outcome cmd_intersect(const std::string& path, const std::string& divisor, std::istream& in) {
  Fan f = read_valid_fan(path, in);
  ToricDivisor d = read_divisor(divisor, f.num_rays(), in);
  auto ws = walls(f);
  auto degrees = intersect_all(f, d, ws);
  Json list = Json::array();
  for (std::size_t i = 0; i < ws.size(); ++i) {
    Json w = wall_json(ws[i]);
    w["degree"] = io::to_json(degrees[i]);
    list.push_back(w);
  }
  bool nef = std::all_of(degrees.begin(), degrees.end(), [](const Rational& x) { return x >= 0; });
  bool ample = std::all_of(degrees.begin(), degrees.end(), [](const Rational& x) { return x > 0; });
  return {{{"walls", list}, {"nef", nef}, {"ample", ample}}};
}

Outcome cmd_mori(const std::string& path, std::istream& in) {
  Fan f = read_valid_fan(path, in);
  auto report = mori_cone(f);
  Json ws = Json::array();
  for (std::size_t i = 0; i < report.walls.size(); ++i) {
    Json w = wall_json(report.walls[i]);
    w["class"] = io::to_json(report.classes[i]);
    ws.push_back(w);
  }
  Json extremal = Json::array();
  for (const auto& r : report.extremal)
    extremal.push_back({{"class", io::to_json(r.representative)}, {"walls", r.walls}});
  Json basis = Json::array();
  for (const auto& b : report.basis) basis.push_back(io::to_json(b));
  return {{{"walls", ws}, {"extremal", extremal}, {"basis", basis}, {"picard_rank", report.picard_rank}}};
}

Outcome cmd_cone_theorem(const std::string& path, const std::string& boundary, std::istream& in) {
  Fan f = read_valid_fan(path, in);
  ToricDivisor d = read_divisor(boundary, f.num_rays(), in);
  auto report = cone_theorem_check(f, d);
  auto ws = walls(f);
  Json rays = Json::array();
  for (const auto& r : report.rays) {
    rays.push_back({{"ray", r.ray},
                    {"length", io::to_json(r.length)},
                    {"max_length", io::to_json(r.max_length)},
                    {"witness", wall_json(ws[r.witness_wall])},
                    {"within_n", r.within_n},
                    {"within_n_plus_one", r.within_n_plus_one},
                    {"exception", report.exception}});
  }
  Json out = {{"dim", report.dim}, {"rays", rays}, {"exception", report.exception}, {"holds", report.holds()}};
  return {out, report.holds() ? kOk : kPropertyViolated};
}

Outcome cmd_fujita(const std::string& path, const std::string& boundary, const std::string& bundle,
                   const std::string& mode, std::istream& in) {
  Fan f = read_valid_fan(path, in);
  ToricDivisor d = read_divisor(boundary, f.num_rays(), in);
  if (bundle.empty()) throw Error(ErrorKind::InvalidInput, "--bundle is required");
  ToricDivisor l = read_divisor(bundle, f.num_rays(), in);
  FujitaMode m = mode == "ample" ? FujitaMode::Ample : FujitaMode::Nef;
  auto report = fujita_check(f, d, l, m);
  Json out = {{"mode", mode},
              {"min_degree", io::to_json(report.min_degree)},
              {"hypothesis_met", report.hypothesis_met},
              {"conclusion_holds", report.conclusion_holds},
              {"exception", report.exception},
              {"passed", report.passed()}};
  return {out, report.passed() ? kOk : kPropertyViolated};
}

Outcome cmd_qfact(const std::string& path, std::uint64_t seed, std::istream& in) {
  Fan f = read_valid_fan(path, in);
  auto q = qfactorialize(f, seed);
  Json cones = Json::array();
  for (const auto& c : q.certificate.cones) {
    Json functionals = Json::array();
    for (const auto& m : c.functionals) functionals.push_back(io::to_json(m));
    cones.push_back({{"original_cone", c.original_cone}, {"cells", c.cells}, {"functionals", functionals}});
  }
  const bool valid = verify_relative_certificate(f, q) && refines(q.fan, f) && is_simplicial(q.fan);
  Json out = {{"fan", io::fan_to_json(q.fan)},
              {"certificate", {{"heights", io::to_json(q.certificate.heights)}, {"cones", cones}}},
              {"seed", seed},
              {"certificate_valid", valid}};
  return {out, valid ? kOk : kPropertyViolated};
}

Outcome cmd_contract(const std::string& path, std::size_t ray, std::istream& in) {
  Fan f = read_valid_fan(path, in);
  return {io::fan_to_json(contract(f, ray))};
}

Outcome cmd_pullback(const std::string& path, const std::string& fine_path, const std::string& divisor, bool crepant,
                     std::istream& in) {
  Fan coarse = read_valid_fan(path, in);
  Fan fine = read_valid_fan(fine_path, in);
  ToricDivisor d = read_divisor(divisor, coarse.num_rays(), in);
  if (!crepant) return {io::divisor_to_json(pullback(coarse, fine, d))};
  auto result = crepant_boundary(coarse, fine, d);
  Json out = io::divisor_to_json(result.divisor);
  out["out_of_range"] = result.out_of_range;
  return {out};
}

Outcome cmd_random(const std::string& kind, std::size_t dim, std::size_t rays, std::uint64_t seed) {
  if (kind == "fano") return {io::fan_to_json(random_fano_rho_one(dim, seed).fan)};
  if (kind == "coarsening") return {io::fan_to_json(random_coarsening(dim, rays, seed))};
  return {io::fan_to_json(random_complete_fan(dim, rays, seed))};
}

// Human-readable rendering of a report.
std::string scalar_text(const Json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

void render(const Json& j, std::ostream& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  if (!j.is_object()) {
    out << pad << scalar_text(j) << '\n';
    return;
  }
  std::size_t width = 0;
  for (const auto& [key, value] : j.items()) width = std::max(width, key.size());
  for (const auto& [key, value] : j.items()) {
    const bool table = value.is_array() && !value.empty() &&
                       std::all_of(value.begin(), value.end(), [](const Json& x) { return x.is_object(); });
    if (value.is_object()) {
      out << pad << key << ":\n";
      render(value, out, indent + 2);
    } else if (table) {
      out << pad << key << ":\n";
      std::vector<std::string> columns;
      for (const auto& row : value)
        for (const auto& [k, v] : row.items())
          if (std::find(columns.begin(), columns.end(), k) == columns.end()) columns.push_back(k);
      std::vector<std::size_t> widths;
      for (const auto& c : columns) {
        std::size_t w = c.size();
        for (const auto& row : value)
          if (row.contains(c)) w = std::max(w, scalar_text(row.at(c)).size());
        widths.push_back(w);
      }
      out << pad << "  ";
      for (std::size_t c = 0; c < columns.size(); ++c) out << std::left << std::setw(static_cast<int>(widths[c] + 2)) << columns[c];
      out << '\n';
      for (const auto& row : value) {
        out << pad << "  ";
        for (std::size_t c = 0; c < columns.size(); ++c)
          out << std::left << std::setw(static_cast<int>(widths[c] + 2))
              << (row.contains(columns[c]) ? scalar_text(row.at(columns[c])) : "");
        out << '\n';
      }
    } else {
      out << pad << std::left << std::setw(static_cast<int>(width + 2)) << key << scalar_text(value) << '\n';
    }
  }
}

void emit(const Json& report, bool pretty, std::ostream& out) {
  if (pretty) {
    render(report, out, 0);
  } else {
    out << io::dump(report) << '\n';
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out) {
  CLI::App app{"Exact intersection theory and Mori cone checks on toric fans", "moritoric"};
  app.require_subcommand(1);
  bool pretty = false;
  app.add_flag("--pretty", pretty, "Render human-readable tables instead of JSON");

  std::string fan_path = "-";
  auto fan_arg = [&](CLI::App* sub) {
    sub->add_option("fan", fan_path, "Fan document path, '-' for stdin")->capture_default_str();
    sub->fallthrough();
  };

  auto* validate = app.add_subcommand("validate", "Check the fan axioms");
  fan_arg(validate);
  auto* info = app.add_subcommand("info", "Completeness, simpliciality, smoothness, projectivity, Picard rank");
  fan_arg(info);

  std::vector<std::string> weights;
  auto* wps = app.add_subcommand("wps", "Fan of a weighted projective space");
  wps->add_option("--weights", weights, "Comma-separated positive weights")->required()->delimiter(',');
  wps->fallthrough();

  std::string rays_file;
  auto* fano = app.add_subcommand("fano", "Fano fan of Picard number one from n + 1 vectors, with a short wall");
  fano->add_option("--rays-file", rays_file, "JSON array of n + 1 primitive vectors")->required();
  fano->fallthrough();

  std::string divisor;
  auto* intersect_cmd = app.add_subcommand("intersect", "Intersection numbers D . V(tau) for every wall");
  fan_arg(intersect_cmd);
  intersect_cmd->add_option("--divisor", divisor, "Divisor file, JSON, or comma-separated rationals")->required();

  auto* mori = app.add_subcommand("mori", "Wall classes, extremal rays and Picard rank");
  fan_arg(mori);

  std::string boundary;
  auto* cone_thm = app.add_subcommand("cone-theorem", "Lengths of (K + D)-negative extremal rays");
  fan_arg(cone_thm);
  cone_thm->add_option("--boundary", boundary, "Boundary divisor D with coefficients in [0, 1] (default 0)");

  std::string bundle;
  std::string mode = "nef";
  auto* fujita = app.add_subcommand("fujita", "Check nefness or ampleness of K + D + L");
  fan_arg(fujita);
  fujita->add_option("--boundary", boundary, "Boundary divisor D (default 0)");
  fujita->add_option("--bundle", bundle, "Cartier divisor L")->required();
  fujita->add_option("--mode", mode, "nef or ample")->check(CLI::IsMember({"nef", "ample"}))->capture_default_str();

  std::string seed_text;
  auto* qfact = app.add_subcommand("qfact", "Small projective Q-factorialization with certificate");
  fan_arg(qfact);
  qfact->add_option("--seed", seed_text, "Height seed (default: MORITORIC_SEED or 0)");

  std::size_t ray_index = 0;
  auto* contract_cmd = app.add_subcommand("contract", "Contract an extremal ray");
  fan_arg(contract_cmd);
  contract_cmd->add_option("--ray", ray_index, "Index into the extremal rays reported by 'mori'")->required();

  std::string fine_path;
  bool crepant = false;
  auto* pull = app.add_subcommand("pullback", "Pull a divisor back to a refinement");
  fan_arg(pull);
  pull->add_option("--fine", fine_path, "Refining fan document")->required();
  pull->add_option("--divisor", divisor, "Divisor on the coarse fan")->required();
  pull->add_flag("--crepant", crepant, "Report the crepant boundary of K + D instead");

  std::string kind = "complete";
  std::size_t dim = 2, budget = 4;
  auto* random = app.add_subcommand("random", "Seeded random fan");
  random->add_option("--kind", kind, "complete, fano or coarsening")
      ->check(CLI::IsMember({"complete", "fano", "coarsening"}))
      ->capture_default_str();
  random->add_option("--dim", dim, "Dimension (2 to 4)")->capture_default_str();
  random->add_option("--rays", budget, "Ray budget")->capture_default_str();
  random->add_option("--seed", seed_text, "Seed (default: MORITORIC_SEED or 0)");
  random->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    emit({{"error", to_string(ErrorKind::InvalidInput)}, {"detail", e.what()}}, pretty, out);
    return kInvalidInput;
  }

  Outcome outcome;
  try {
    auto seed = [&] { return seed_text.empty() ? default_seed() : parse_seed(seed_text); };
    if (validate->parsed()) {
      outcome = cmd_validate(fan_path, in);
    } else if (info->parsed()) {
      outcome = cmd_info(fan_path, in);
    } else if (wps->parsed()) {
      outcome = cmd_wps(weights);
    } else if (fano->parsed()) {
      outcome = cmd_fano(rays_file, in);
    } else if (intersect_cmd->parsed()) {
      outcome = cmd_intersect(fan_path, divisor, in);
    } else if (mori->parsed()) {
      outcome = cmd_mori(fan_path, in);
    } else if (cone_thm->parsed()) {
      outcome = cmd_cone_theorem(fan_path, boundary, in);
    } else if (fujita->parsed()) {
      outcome = cmd_fujita(fan_path, boundary, bundle, mode, in);
    } else if (qfact->parsed()) {
      outcome = cmd_qfact(fan_path, seed(), in);
    } else if (contract_cmd->parsed()) {
      outcome = cmd_contract(fan_path, ray_index, in);
    } else if (pull->parsed()) {
      outcome = cmd_pullback(fan_path, fine_path, divisor, crepant, in);
    } else if (random->parsed()) {
      outcome = cmd_random(kind, dim, budget, seed());
    }
  } catch (const Error& e) {
    outcome = {{{"error", to_string(e.kind())}, {"detail", e.detail()}}, kInvalidInput};
  } catch (const std::exception& e) {
    outcome = {{{"error", to_string(ErrorKind::InvalidInput)}, {"detail", e.what()}}, kInvalidInput};
  }
  emit(outcome.report, pretty, out);
  return outcome.code;
}

}  // namespace moritoric::cli
