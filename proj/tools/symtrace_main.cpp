// Batch front end: simulate / decode / classify / grouplab / selftest.
// Exit codes: 0 success, 1 selftest or fixture failure, 2 validation or parse
// failure, 3 decode shape error, 4 expectation mismatch, 5 cap exceeded.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "symtrace/albert.hpp"
#include "symtrace/chardeg.hpp"
#include "symtrace/decode.hpp"
#include "symtrace/groupset.hpp"
#include "symtrace/io.hpp"
#include "symtrace/selftest.hpp"
#include "symtrace/symrep.hpp"

namespace {

using namespace symtrace;
using nlohmann::ordered_json;

constexpr std::uint64_t kDefaultSeed = 0x5EED;

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case Errc::parse_error:
      return 2;
    case Errc::cap_exceeded:
      return 5;
    case Errc::duplicate_abscissa:
    case Errc::insufficient_samples:
    case Errc::not_monic:
    case Errc::non_integer_dimension:
    case Errc::not_a_product:
    case Errc::zero_divisor:
    case Errc::inconsistent_twist:
    case Errc::non_power_twist:
    case Errc::cross_validation_failed:
      return 3;
    default:
      return 2;
  }
}

int report_error(const Error& e) {
  ordered_json out;
  out["error"] = e.name();
  out["message"] = e.what();
  std::cout << out.dump() << "\n";
  return exit_code_for(e);
}

std::vector<int> parse_factor_list(const std::string& text) {
  std::vector<int> factors;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw CLI::ValidationError("--factors", "empty factor entry");
    std::size_t used = 0;
    int value = std::stoi(item, &used);
    if (used != item.size() || value < 1)
      throw CLI::ValidationError("--factors", "factors must be positive integers");
    factors.push_back(value);
  }
  if (factors.empty()) throw CLI::ValidationError("--factors", "need at least one factor");
  return factors;
}

std::vector<ModMatrix> sl_transvection_generators(int n, std::uint64_t modulus) {
  std::vector<ModMatrix> gens;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      if (i != j) gens.push_back(elem_transvection(n, i, j, 1, modulus));
  return gens;
}

std::uint64_t modulus_of(std::uint64_t l, int m) {
  std::uint64_t modulus = 1;
  for (int i = 0; i < m; ++i) modulus *= l;
  return modulus;
}

ordered_json endo_type_json(const EndoType& ty) {
  ordered_json j;
  j["kind"] = endo_kind_name(ty.kind);
  j["delta"] = ty.delta;
  j["e"] = ty.e;
  j["e0"] = ty.e0;
  return j;
}

ordered_json fixture_record(int n, std::uint64_t l, int m, std::size_t cap) {
  GroupSet g = GroupSet::closure(sl_transvection_generators(n, modulus_of(l, m)), cap);
  ordered_json rec;
  rec["group"] = "SL(" + std::to_string(n) + ", Z/" + std::to_string(modulus_of(l, m)) + ")";
  rec["n"] = n;
  rec["l"] = l;
  rec["m"] = m;
  rec["order"] = g.size();
  rec["character_degrees"] = character_degrees(g);
  if (l > 3) {
    std::vector<std::size_t> orders;
    for (const auto& sub : normal_subgroups(g, cap)) orders.push_back(sub.size());
    rec["normal_subgroup_orders"] = orders;
  }
  return rec;
}

int cmd_simulate(const std::string& factors_text, int weight, int det1, int twists,
                 std::uint64_t seed, const std::string& out_path) {
  RepSpec spec(parse_factor_list(factors_text), weight);
  auto samples = simulate_family(spec, det1, twists, seed);
  write_samples_file(out_path, samples);

  ordered_json summary;
  summary["factors"] = spec.factors;
  summary["det_weight"] = spec.det_weight;
  summary["det1_samples"] = det1;
  summary["twist_samples"] = twists;
  summary["seed"] = std::to_string(seed);
  summary["out"] = out_path;
  std::cout << summary.dump() << "\n";
  return 0;
}

int cmd_decode(const std::string& in_path, const std::string& expect_factors,
               int expect_weight, bool has_expect_weight) {
  auto samples = read_samples_file(in_path);
  DecodeResult result = decode(samples);
  std::cout << decode_result_json(result) << "\n";

  if (!expect_factors.empty()) {
    std::vector<int> want = parse_factor_list(expect_factors);
    std::sort(want.begin(), want.end());
    if (want != result.factors) {
      std::cerr << "expectation mismatch: factors\n";
      return 4;
    }
  }
  if (has_expect_weight && expect_weight != result.det_weight) {
    std::cerr << "expectation mismatch: det_weight\n";
    return 4;
  }
  return 0;
}

int cmd_classify(long long dim) {
  OddClassification cls = classify_odd_totally_real(dim);
  ordered_json out;
  out["dim"] = dim;
  out["admissible"] = ordered_json::array();
  for (const auto& ty : cls.admissible_types) out["admissible"].push_back(endo_type_json(ty));
  out["candidates"] = ordered_json::array();
  for (const auto& cand : cls.candidates) {
    ordered_json cj = endo_type_json(cand.type);
    cj["admissible"] = cand.report.admissible;
    cj["violated_constraints"] = cand.report.violated_constraints;
    if (cand.report.parity_data) {
      cj["parity"] = {{"r_plus_s", cand.report.parity_data->r_plus_s},
                      {"odd", cand.report.parity_data->odd}};
    }
    if (!cand.report.notes.empty()) cj["notes"] = cand.report.notes;
    out["candidates"].push_back(std::move(cj));
  }
  std::cout << out.dump() << "\n";
  return 0;
}

int cmd_grouplab_closure(int n, std::uint64_t l, int m, std::size_t cap) {
  GroupSet g = GroupSet::closure(sl_transvection_generators(n, modulus_of(l, m)), cap);
  Integer formula = group_order(n, l, m);
  ordered_json out;
  out["n"] = n;
  out["l"] = l;
  out["m"] = m;
  out["generators"] = "transvections";
  out["closure_size"] = g.size();
  out["formula_order"] = formula.get_str();
  out["match"] = (Integer(static_cast<unsigned long>(g.size())) == formula);
  std::cout << out.dump() << "\n";
  return 0;
}

int cmd_grouplab_kernel(int n, std::uint64_t l, int m, std::size_t cap) {
  auto res = congruence_kernel(n, l, m, cap);
  ordered_json out;
  out["n"] = n;
  out["l"] = l;
  out["m"] = m;
  out["order"] = res.kernel.size();
  out["abelian"] = res.abelian;
  out["exponent"] = res.exponent;
  std::cout << out.dump() << "\n";
  return 0;
}

int cmd_grouplab_normal(int n, std::uint64_t l, int m, std::size_t cap) {
  GroupSet g = GroupSet::closure(sl_transvection_generators(n, modulus_of(l, m)), cap);
  ordered_json out;
  out["n"] = n;
  out["l"] = l;
  out["m"] = m;
  out["group_order"] = g.size();
  std::vector<std::size_t> orders;
  for (const auto& sub : normal_subgroups(g, cap)) orders.push_back(sub.size());
  out["normal_subgroup_orders"] = orders;
  std::cout << out.dump() << "\n";
  return 0;
}

int cmd_grouplab_degrees(int n, std::uint64_t l, int m, std::size_t cap) {
  GroupSet g = GroupSet::closure(sl_transvection_generators(n, modulus_of(l, m)), cap);
  auto degrees = character_degrees(g);
  ordered_json out;
  out["n"] = n;
  out["l"] = l;
  out["m"] = m;
  out["order"] = g.size();
  out["degrees"] = degrees;
  std::cout << out.dump() << "\n";
  return 0;
}

int cmd_grouplab_dichotomy(std::uint64_t l, std::size_t cap) {
  const std::uint64_t count_gl2 = (l * l - 1) * (l * l - l);
  if (count_gl2 > cap) fail(Errc::cap_exceeded, "GL_2 sweep larger than cap");
  std::size_t checked = 0;
  bool iff_holds = true, no_square = true;
  for (std::uint64_t a = 0; a < l; ++a)
    for (std::uint64_t b = 0; b < l; ++b)
      for (std::uint64_t c = 0; c < l; ++c)
        for (std::uint64_t d = 0; d < l; ++d) {
          ModMatrix g;
          g.modulus = l;
          g.entries = ModEntries::Zero(2, 2);
          g.entries(0, 0) = a;
          g.entries(0, 1) = b;
          g.entries(1, 0) = c;
          g.entries(1, 1) = d;
          if (std::gcd(mod_det(g), l) != 1) continue;
          ++checked;
          OrderProfile profile = order_profile(g);
          if ((profile.order % static_cast<long long>(l) == 0) == profile.semisimple)
            iff_holds = false;
          if (profile.order % static_cast<long long>(l * l) == 0) no_square = false;
        }
  ordered_json out;
  out["l"] = l;
  out["elements"] = checked;
  out["l_divides_order_iff_not_semisimple"] = iff_holds;
  out["l_squared_divides_no_order"] = no_square;
  out["holds"] = iff_holds && no_square;
  std::cout << out.dump() << "\n";
  return 0;
}

int cmd_grouplab_fixture(int n, std::uint64_t l, int m, std::size_t cap,
                         const std::string& path, bool bless) {
  ordered_json rec = fixture_record(n, l, m, cap);
  if (bless) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(Errc::parse_error, "cannot open '" + path + "' for writing");
    out << rec.dump(2) << "\n";
    std::cout << "blessed " << path << "\n";
    return 0;
  }
  std::ifstream in(path);
  if (!in) fail(Errc::parse_error, "cannot open fixture '" + path + "'");
  ordered_json golden = ordered_json::parse(in, nullptr, /*allow_exceptions=*/false);
  if (golden.is_discarded()) fail(Errc::parse_error, "fixture is not valid JSON");
  if (nlohmann::json(golden) != nlohmann::json(rec)) {
    std::cout << "fixture mismatch for " << path << "\n";
    std::cout << "computed: " << rec.dump() << "\n";
    return 1;
  }
  std::cout << "fixture ok: " << path << "\n";
  return 0;
}

int cmd_selftest(std::uint64_t seed, const std::string& inject_fault) {
  SelftestReport report = run_selftest(seed, inject_fault);
  std::size_t passed = 0;
  for (const auto& c : report.checks) {
    if (c.passed) {
      ++passed;
      std::cout << "PASS " << c.name << "\n";
    } else {
      std::cout << "FAIL " << c.name << ": " << c.detail << "\n";
    }
  }
  std::cout << "selftest: " << passed << "/" << report.checks.size() << " checks passed\n";
  return report.all_passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact symmetric-power trace toolkit"};
  app.require_subcommand(1);

  // simulate
  std::string sim_factors, sim_out;
  int sim_weight = 0, sim_det1 = 0, sim_twists = 0;
  std::uint64_t sim_seed = kDefaultSeed;
  auto* sim = app.add_subcommand("simulate", "write a simulated family sample file");
  sim->add_option("--factors", sim_factors, "comma-separated symmetric power degrees")->required();
  sim->add_option("--weight", sim_weight, "determinant twist weight")->check(CLI::NonNegativeNumber);
  sim->add_option("--det1", sim_det1, "number of det = 1 samples")->required()->check(CLI::PositiveNumber);
  sim->add_option("--twists", sim_twists, "number of det >= 2 samples")->required()->check(CLI::PositiveNumber);
  sim->add_option("--seed", sim_seed, "generator seed");
  sim->add_option("--out", sim_out, "output sample file (JSON lines)")->required();

  // decode
  std::string dec_in, dec_expect_factors;
  int dec_expect_weight = -1;
  auto* dec = app.add_subcommand("decode", "recover decomposition parameters from samples");
  dec->add_option("--in", dec_in, "input sample file")->required();
  dec->add_option("--expect-factors", dec_expect_factors, "fail (exit 4) unless factors match");
  auto* dec_w = dec->add_option("--expect-weight", dec_expect_weight,
                                "fail (exit 4) unless det weight matches");

  // classify
  long long cls_dim = 0;
  auto* cls = app.add_subcommand("classify", "admissible endomorphism types in odd dimension");
  cls->add_option("--dim", cls_dim, "odd positive dimension")->required();

  // grouplab
  auto* lab = app.add_subcommand("grouplab", "finite matrix group experiments");
  lab->require_subcommand(1);
  struct LabArgs {
    int n = 2;
    std::uint64_t l = 5;
    int m = 1;
    std::size_t cap = kDefaultGroupCap;
  };
  LabArgs closure_args, kernel_args, normal_args, degrees_args, fixture_args;
  std::uint64_t dichotomy_l = 5;
  std::size_t dichotomy_cap = kDefaultGroupCap;
  std::string fixture_path;
  bool fixture_bless = false;

  auto add_nlm = [](CLI::App* cmd, LabArgs& args) {
    cmd->add_option("--n", args.n, "matrix size")->check(CLI::Range(1, 3));
    cmd->add_option("--l", args.l, "prime")->required();
    cmd->add_option("--m", args.m, "prime power exponent")->check(CLI::Range(1, 6));
    cmd->add_option("--cap", args.cap, "element cap");
  };
  auto* lab_closure = lab->add_subcommand("closure", "transvection closure vs order formula");
  add_nlm(lab_closure, closure_args);
  auto* lab_kernel = lab->add_subcommand("kernel", "congruence kernel structure");
  add_nlm(lab_kernel, kernel_args);
  auto* lab_normal = lab->add_subcommand("normal", "normal subgroup enumeration");
  add_nlm(lab_normal, normal_args);
  auto* lab_degrees = lab->add_subcommand("degrees", "irreducible character degrees");
  add_nlm(lab_degrees, degrees_args);
  auto* lab_dich = lab->add_subcommand("dichotomy", "order/semisimplicity sweep over GL_2");
  lab_dich->add_option("--l", dichotomy_l, "prime")->required();
  lab_dich->add_option("--cap", dichotomy_cap, "element cap");
  auto* lab_fixture = lab->add_subcommand("fixture", "golden fixture check / regeneration");
  add_nlm(lab_fixture, fixture_args);
  lab_fixture->add_option("--file", fixture_path, "fixture JSON path")->required();
  lab_fixture->add_flag("--bless", fixture_bless, "rewrite the fixture");

  // selftest
  std::uint64_t st_seed = kDefaultSeed;
  std::string st_fault;
  auto* st = app.add_subcommand("selftest", "run the full invariant suite");
  st->add_option("--seed", st_seed, "seed for randomized properties");
  st->add_option("--inject-fault", st_fault, "deliberately break one check (harness sanity)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 2;
  }

  try {
    if (sim->parsed())
      return cmd_simulate(sim_factors, sim_weight, sim_det1, sim_twists, sim_seed, sim_out);
    if (dec->parsed())
      return cmd_decode(dec_in, dec_expect_factors, dec_expect_weight, dec_w->count() > 0);
    if (cls->parsed()) {
      if (cls_dim < 1 || cls_dim % 2 == 0) {
        std::cerr << "classify: --dim must be an odd positive integer\n";
        return 2;
      }
      return cmd_classify(cls_dim);
    }
    if (lab->parsed()) {
      auto validate = [](const LabArgs& a, bool need_l_gt_3) -> int {
        if (!is_prime(a.l)) {
          std::cerr << "grouplab: --l must be prime\n";
          return 2;
        }
        if (need_l_gt_3 && a.l <= 3) {
          std::cerr << "grouplab normal: needs l > 3 (the local-ring argument assumes it)\n";
          return 2;
        }
        return 0;
      };
      if (lab_closure->parsed()) {
        if (int rc = validate(closure_args, false)) return rc;
        return cmd_grouplab_closure(closure_args.n, closure_args.l, closure_args.m, closure_args.cap);
      }
      if (lab_kernel->parsed()) {
        if (int rc = validate(kernel_args, false)) return rc;
        return cmd_grouplab_kernel(kernel_args.n, kernel_args.l, kernel_args.m, kernel_args.cap);
      }
      if (lab_normal->parsed()) {
        if (int rc = validate(normal_args, true)) return rc;
        return cmd_grouplab_normal(normal_args.n, normal_args.l, normal_args.m, normal_args.cap);
      }
      if (lab_degrees->parsed()) {
        if (int rc = validate(degrees_args, false)) return rc;
        return cmd_grouplab_degrees(degrees_args.n, degrees_args.l, degrees_args.m, degrees_args.cap);
      }
      if (lab_dich->parsed()) {
        if (!is_prime(dichotomy_l)) {
          std::cerr << "grouplab: --l must be prime\n";
          return 2;
        }
        return cmd_grouplab_dichotomy(dichotomy_l, dichotomy_cap);
      }
      if (lab_fixture->parsed()) {
        if (int rc = validate(fixture_args, false)) return rc;
        return cmd_grouplab_fixture(fixture_args.n, fixture_args.l, fixture_args.m,
                                    fixture_args.cap, fixture_path, fixture_bless);
      }
    }
    if (st->parsed()) return cmd_selftest(st_seed, st_fault);
  } catch (const Error& e) {
    return report_error(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
