#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "convval/conjugacy.hpp"
#include "convval/document.hpp"
#include "convval/errors.hpp"
#include "convval/law_harness.hpp"
#include "convval/valuation.hpp"

using namespace convval;
using json = nlohmann::json;

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInput = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw ParseError("cannot write " + out_path);
  out << text;
}

Vec parse_point(const std::string& text, std::size_t n) {
  Vec x;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) x.push_back(parse_rational(item));
  if (x.size() != n) {
    throw ParseError("point has " + std::to_string(x.size()) + " coordinates, expected " + std::to_string(n));
  }
  return x;
}

std::size_t thread_count() {
  const char* env = std::getenv("CONVVAL_THREADS");
  if (!env || !*env) return 1;
  char* end = nullptr;
  const unsigned long v = std::strtoul(env, &end, 10);
  if (*end != '\0' || v == 0) throw UsageError("CONVVAL_THREADS must be a positive integer");
  return v;
}

json run_report(const std::string& command, std::uint64_t seed, const std::string& digest) {
  json r;
  r["schema"] = kSchema;
  r["version"] = kVersion;
  r["command"] = command;
  r["seed"] = seed;
  r["inputs_digest"] = digest;
  return r;
}

PwaConvex load_coercive(const std::string& path) {
  return PwaConvex::from_closed(parse_function_document(read_file(path)).function);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact piecewise-affine convex functions and their valuations"};
  app.require_subcommand(1);
  std::string out_path;
  bool timings = false;
  std::uint64_t seed = 1;
  std::size_t count = 10;
  std::size_t n = 2;
  app.add_option("--out", out_path, "Write the main output to this file")->type_name("PATH");
  app.add_flag("--timings", timings, "Add wall-clock timings to reports");

  auto* eval = app.add_subcommand("eval", "Evaluate a function document at a point");
  std::string eval_file, eval_point;
  eval->add_option("file", eval_file)->required();
  eval->add_option("--point", eval_point, "Comma-separated rationals")->required();

  auto* conj = app.add_subcommand("conjugate", "Print the conjugate as a function document");
  std::string conj_file;
  conj->add_option("file", conj_file)->required();

  auto* infconv = app.add_subcommand("infconv", "Print the infimal convolution of two functions");
  std::string inf_a, inf_b;
  infconv->add_option("first", inf_a)->required();
  infconv->add_option("second", inf_b)->required();

  auto* val = app.add_subcommand("valuation", "Combined valuation of u for growth functions zeta0, zetan");
  std::string val_u, val_z0, val_zn, val_profile;
  val->add_option("u", val_u)->required();
  val->add_option("zeta0", val_z0)->required();
  val->add_option("zetan", val_zn)->required();
  val->add_option("--profile", val_profile, "Write the level-volume profile as CSV")->type_name("PATH");

  auto* growth = app.add_subcommand("growth", "Tabulate zeta, psi_n and the signed scaled derivative as CSV");
  std::string growth_file, tmin_text = "0", tmax_text = "4";
  std::size_t steps = 16;
  growth->add_option("zeta", growth_file)->required();
  growth->add_option("--n", n, "Dimension")->check(CLI::PositiveNumber);
  growth->add_option("--tmin", tmin_text);
  growth->add_option("--tmax", tmax_text);
  growth->add_option("--steps", steps)->check(CLI::PositiveNumber);

  auto* laws = app.add_subcommand("laws", "Run a law suite");
  std::string suite;
  laws->add_option("suite", suite)->required();
  laws->add_option("--seed", seed);
  laws->add_option("--count", count)->check(CLI::PositiveNumber);

  auto* fixtures = app.add_subcommand("fixtures", "Emit seeded fixtures as documents");
  std::string kind = "corpus";
  fixtures->add_option("--kind", kind)->check(CLI::IsMember({"corpus", "bounded", "pairs"}));
  fixtures->add_option("--n", n)->check(CLI::Range(1, 4));
  fixtures->add_option("--count", count)->check(CLI::PositiveNumber);
  fixtures->add_option("--seed", seed);

  for (auto* sub : {eval, conj, infconv, val, growth, laws, fixtures}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(); };

  try {
    if (*eval) {
      const ClosedPwa f = parse_function_document(read_file(eval_file)).function;
      write_output(out_path, to_string(f.eval(parse_point(eval_point, f.dimension()))) + "\n");
      return 0;
    }
    if (*conj) {
      const ClosedPwa f = parse_function_document(read_file(conj_file)).function;
      write_output(out_path, serialize_function_document(conjugate(f), "conjugate"));
      return 0;
    }
    if (*infconv) {
      const ClosedPwa a = parse_function_document(read_file(inf_a)).function;
      const ClosedPwa b = parse_function_document(read_file(inf_b)).function;
      write_output(out_path, serialize_function_document(inf_convolution(a, b), "inf-convolution"));
      return 0;
    }
    if (*val) {
      const PwaConvex u = load_coercive(val_u);
      const GrowthFunction z0 = parse_growth_document(read_file(val_z0));
      const GrowthFunction zn = parse_growth_document(read_file(val_zn));
      const LevelVolumeProfile prof = level_volume_profile(u);
      json r = run_report("valuation", 0,
                          digest_of({canonical_text(u), canonical_text(z0), canonical_text(zn)}));
      const Number integral = integral_valuation(zn, prof);
      const Number at_min = z0(prof.t_min);
      r["results"] = {{"valuation", number_text(at_min + integral)},
                      {"min_value", to_string(prof.t_min)},
                      {"zeta0_at_min", number_text(at_min)},
                      {"integral", number_text(integral)},
                      {"argmin_volume", to_string(prof.atom)},
                      {"regime", z0.nonnegative() && zn.nonnegative() ? "nonnegative" : "signed"}};
      r["laws"] = json::array();
      if (!val_profile.empty()) {
        std::set<Rational> grid(prof.breakpoints.begin(), prof.breakpoints.end());
        const Rational last = prof.breakpoints.back();
        const Rational span = last - prof.t_min;
        const Rational width = span == 0 ? Rational(1) : span;
        for (int j = 0; j <= 16; ++j) grid.insert(prof.t_min + width * Rational(j, 8));
        std::string csv = "t,V\n";
        for (const auto& t : grid) csv += to_string(t) + "," + to_string(prof.volume_at(t)) + "\n";
        write_output(val_profile, csv);
      }
      if (timings) r["timings"] = {{"total_seconds", format_double(elapsed())}};
      write_output(out_path, r.dump(2) + "\n");
      return 0;
    }
    if (*growth) {
      const PiecewisePoly z = parse_piecewise_document(read_file(growth_file));
      const Rational lo = parse_rational(tmin_text);
      const Rational hi = parse_rational(tmax_text);
      if (hi < lo) throw UsageError("--tmax must not be below --tmin");
      const PsiFunction psi = psi_from_zeta(z, n);
      const PiecewisePoly back = signed_scaled_derivative(psi, n);
      std::set<Rational> grid;
      for (std::size_t j = 0; j <= steps; ++j) {
        grid.insert(lo + (hi - lo) * Rational(static_cast<long>(j), static_cast<long>(steps)));
      }
      for (const auto& b : z.breakpoints()) {
        if (b >= lo && b <= hi) grid.insert(b);
      }
      std::string csv = "t,zeta,psi,signed_derivative\n";
      for (const auto& t : grid) {
        csv += to_string(t) + "," + number_text(z(t)) + "," + number_text(psi(t)) + "," + number_text(back(t)) + "\n";
      }
      write_output(out_path, csv);
      return 0;
    }
    if (*laws) {
      const auto& names = suite_names();
      if (std::find(names.begin(), names.end(), suite) == names.end()) {
        throw UsageError("unknown suite '" + suite + "'");
      }
      const std::vector<LawReport> reports = run_suite(suite, seed, count, thread_count());
      const std::string laws_text = serialize_law_reports(reports);
      std::size_t passed = 0;
      for (const auto& rep : reports) passed += rep.pass ? 1 : 0;
      json r = run_report("laws", seed, digest_of({suite, std::to_string(count)}));
      r["results"] = {{"suite", suite},
                      {"count", count},
                      {"total", reports.size()},
                      {"passed", passed},
                      {"failed", reports.size() - passed},
                      {"report_digest", fnv1a_hex(laws_text)}};
      r["laws"] = json::parse(laws_text);
      if (timings) r["timings"] = {{"total_seconds", format_double(elapsed())}};
      write_output(out_path, r.dump(2) + "\n");
      return passed == reports.size() ? 0 : kExitFailure;
    }
    if (*fixtures) {
      json r;
      r["schema"] = kSchema;
      r["kind"] = "fixtures";
      r["seed"] = seed;
      r["fixtures"] = json::array();
      if (kind == "pairs") {
        for (std::size_t j = 0; j < count; ++j) {
          const FixturePair p = generate_pair_with_convex_min(seed + j, n);
          r["fixtures"].push_back({{"name", "pair-" + std::to_string(seed + j)},
                                   {"provenance", p.provenance},
                                   {"certified", p.certified},
                                   {"u", json::parse(serialize_function_document(p.u))},
                                   {"v", json::parse(serialize_function_document(p.v))}});
        }
      } else {
        const auto corpus = kind == "bounded" ? bounded_corpus(n, count, seed) : fixture_corpus(n, count, seed);
        for (const auto& f : corpus) {
          r["fixtures"].push_back(
              {{"name", f.name}, {"function", json::parse(serialize_function_document(f.u, f.name))}});
        }
      }
      write_output(out_path, r.dump(2) + "\n");
      return 0;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitInput;
  } catch (const InvalidGrowthFunction& e) {
    std::cerr << "invalid growth function at breakpoint " << to_string(e.breakpoint) << ": " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitUsage;
}
