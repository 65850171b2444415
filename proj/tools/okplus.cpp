#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <chrono>
#include <fstream>
#include <iostream>
#include <mutex>
#include <thread>

#include "okplus/cf.hpp"
#include "okplus/field.hpp"
#include "okplus/norms.hpp"
#include "okplus/reconstruction.hpp"
#include "okplus/scrambled_oracle.hpp"
#include "okplus/semigroup.hpp"
#include "okplus/unique_decomp.hpp"

using json = nlohmann::ordered_json;
using namespace okp;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMathFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNotTotallyPositive = 3;

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
      .count();
}

json element_json(const FieldContext& ctx, const QuadInt& x) {
  Int X, Y;
  half_coords(ctx, x, X, Y);
  return json{{"a", x.a.get_str()},
              {"b", x.b.get_str()},
              {"half_x", X.get_str()},
              {"half_y", Y.get_str()},
              {"surd", to_surd_string(ctx, x)}};
}

json cf_json(const CFEngine& cf) {
  const auto& e = cf.expansion();
  json j;
  j["D"] = cf.ctx().D;
  j["delta"] = cf.ctx().delta;
  j["u"] = e.u;
  j["s"] = e.s;
  j["s_plus"] = e.s_plus;
  j["u0_parity"] = (e.u[0] % 2 == 0) ? "even" : "odd";
  j["s_parity"] = (e.s % 2 == 0) ? "even" : "odd";
  j["epsilon"] = element_json(cf.ctx(), cf.fundamental_unit());
  j["epsilon_norm"] = norm(cf.ctx(), cf.fundamental_unit()).get_str();
  j["epsilon_plus"] = element_json(cf.ctx(), cf.totally_positive_unit());
  return j;
}

const char* ud_tag_name(UDTag t) {
  switch (t) {
    case UDTag::Indecomposable: return "indecomposable";
    case UDTag::ConvergentMultiple: return "convergent_multiple";
    case UDTag::SeamPlusNext: return "seam_plus_next";
    case UDTag::MultiplePlusOne: return "multiple_plus_one";
    case UDTag::UnitBlock: return "unit_block";
    case UDTag::NotUD: return "not_ud";
  }
  return "?";
}

json bounds_json(const BoundReport& r) {
  json j;
  j["i"] = r.i;
  j["r"] = r.r;
  j["e"] = r.e.get_str();
  j["f"] = r.f.get_str();
  j["norm"] = r.norm_value.get_str();
  j["upper1_holds"] = r.upper1_holds;
  j["upper2_holds"] = r.upper2_holds;
  j["lower_applies"] = json{{"a", r.a_applies}, {"b", r.b_applies},
                            {"c", r.c_applies}, {"d", r.d_applies}};
  j["lower_holds"] = r.lower_holds;
  return j;
}

int cmd_cf(long D) {
  CFEngine cf(make_context(D));
  std::cout << cf_json(cf).dump(2) << "\n";
  return kExitOk;
}

int cmd_classify(long D, long long a, long long b) {
  CFEngine cf(make_context(D));
  const auto& ctx = cf.ctx();
  const QuadInt x{Int(static_cast<long>(a)), Int(static_cast<long>(b))};
  json j;
  j["D"] = D;
  j["element"] = element_json(ctx, x);
  j["trace"] = trace(ctx, x).get_str();
  j["norm"] = norm(ctx, x).get_str();
  j["sign_first"] = sign_at(ctx, x, Embedding::first);
  j["sign_second"] = sign_at(ctx, x, Embedding::second);
  const bool tp = is_totally_positive(ctx, x);
  j["totally_positive"] = tp;
  if (!tp) {
    std::cout << j.dump(2) << "\n";
    return kExitNotTotallyPositive;
  }
  const CanonicalForm cform = canonicalize(cf, x);
  j["canonical"] = json{{"j0", cform.j0}, {"e", cform.e.get_str()}, {"f", cform.f.get_str()}};
  j["indecomposable"] = is_indecomposable(cf, x);
  const UDClass cls = classify_ud(cf, x);
  j["uniquely_decomposable"] = cls.tag != UDTag::NotUD;
  j["ud_clause"] = ud_tag_name(cls.tag);
  if (cls.tag != UDTag::NotUD) {
    j["ud_witness"] = json{{"conjugated", cls.conjugated}, {"i", cls.i}, {"r", cls.r},
                           {"e", cls.e.get_str()}, {"f", cls.f.get_str()}};
  } else {
    auto decs = enumerate_decompositions(cf, x, 2);
    json ds = json::array();
    for (const auto& dec : decs) {
      json parts = json::array();
      for (const auto& p : dec) parts.push_back(element_json(ctx, p));
      ds.push_back(parts);
    }
    j["decompositions_found"] = ds;
  }
  // Norm-bound report in convergent coordinates; available away from the
  // chain center (conjugating if needed).
  long j0 = cform.j0;
  QuadInt y = x;
  if (j0 < 0) {
    y = conjugate(ctx, x);
    j0 = canonicalize(cf, y).j0;
  }
  if (j0 >= 1) {
    const CanonicalForm cy = canonicalize(cf, y);
    const BetaCoords bc = beta_coords(cf, cy.j0);
    j["bounds"] = bounds_json(bounds_check(cf, bc.i, bc.r, cy.e, cy.f));
  } else {
    j["bounds"] = nullptr;
  }
  std::cout << j.dump(2) << "\n";
  return kExitOk;
}

int cmd_indecomposables(long D, long count, long max_trace, bool with_conjugates) {
  CFEngine cf(make_context(D));
  const auto& ctx = cf.ctx();
  std::vector<long> js;
  if (count >= 0) {
    for (long t = 0; t < count; ++t) js.push_back(t);
  } else {
    for (long t = 0;; ++t) {
      if (trace(ctx, beta(cf, t)) > max_trace) break;
      js.push_back(t);
    }
  }
  if (with_conjugates) {
    std::vector<long> all;
    for (auto it = js.rbegin(); it != js.rend(); ++it)
      if (*it != 0) all.push_back(-*it);
    all.insert(all.end(), js.begin(), js.end());
    js = all;
  }
  json out;
  out["D"] = D;
  json list = json::array();
  for (long t : js) {
    const QuadInt bj = beta(cf, t);
    const BetaCoords bc = beta_coords(cf, t);
    json rec;
    rec["j"] = t;
    rec["i"] = bc.i;
    rec["r"] = bc.r;
    rec["conjugated"] = bc.conjugated;
    rec["element"] = element_json(ctx, bj);
    rec["norm"] = norm(ctx, bj).get_str();
    rec["trace"] = trace(ctx, bj).get_str();
    list.push_back(rec);
  }
  out["indecomposables"] = list;
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

int cmd_count_ud(long D, bool verify_brute) {
  CFEngine cf(make_context(D));
  const Int formula = count_ud_mod_units(cf);
  json j;
  j["D"] = D;
  j["count"] = formula.get_str();
  int rc = kExitOk;
  if (verify_brute) {
    const auto reps = ud_representatives(cf);
    j["enumerated"] = reps.size();
    const bool match = formula == Int(static_cast<long>(reps.size()));
    j["match"] = match;
    if (!match) rc = kExitMathFailure;
  }
  std::cout << j.dump(2) << "\n";
  return rc;
}

bool norm_audit_run(const CFEngine& cf, long max_ef, long max_i, json* out) {
  bool all_ok = true;
  const RecurrenceCheck rc = norm_recurrence_check(cf, max_i);
  all_ok = all_ok && rc.ok;
  if (out) (*out)["recurrences_ok"] = rc.ok;

  const mpq_class cs[] = {mpq_class(1, 4), mpq_class(1, 2), mpq_class(3, 4)};
  long checked = 0, upper_fail = 0, lower_fail = 0;
  for (long i = 1; i <= max_i; i += 2) {
    const long u_next = cf.u_at(i + 2);
    for (long r = 0; r < u_next; ++r) {
      for (long e = 1; e <= max_ef; ++e) {
        for (long f = 0; e + f <= max_ef; ++f) {
          for (const auto& c : cs) {
            const BoundReport br = bounds_check(cf, i, r, Int(e), Int(f), c);
            ++checked;
            if (!br.upper1_holds || !br.upper2_holds) ++upper_fail;
            if (!br.lower_holds) ++lower_fail;
          }
        }
      }
    }
  }
  all_ok = all_ok && upper_fail == 0 && lower_fail == 0;
  const bool cap_ok = audit_ud_norms(cf);
  all_ok = all_ok && cap_ok;
  if (out) {
    (*out)["grid_checked"] = checked;
    (*out)["upper_failures"] = upper_fail;
    (*out)["lower_failures"] = lower_fail;
    (*out)["ud_cap_ok"] = cap_ok;
    (*out)["ok"] = all_ok;
  }
  return all_ok;
}

int cmd_norm_audit(long D, long max_ef, long max_i) {
  CFEngine cf(make_context(D));
  json j;
  j["D"] = D;
  const bool ok = norm_audit_run(cf, max_ef, max_i, &j);
  std::cout << j.dump(2) << "\n";
  return ok ? kExitOk : kExitMathFailure;
}

int cmd_reconstruct(long D, std::uint64_t seed, bool no_timings) {
  CFEngine cf(make_context(D));
  const auto t0 = std::chrono::steady_clock::now();
  ScrambledOracle oracle(cf, seed);
  Reconstructor rec(oracle);
  const LabeledChain chain = rec.build_chain(4);
  const long recovered = rec.reconstruct();
  json j;
  j["D"] = D;
  j["seed"] = seed;
  j["recovered"] = recovered;
  j["match"] = recovered == D;
  json labels = json::array();
  for (const auto& v : chain.vertices) labels.push_back(v.label);
  j["chain_labels"] = labels;
  j["center_index"] = chain.center_index;
  const auto& c = oracle.counters();
  j["oracle_calls"] = json{{"add", c.add}, {"eq", c.eq}, {"below", c.below},
                           {"stream", c.stream}};
  if (!no_timings) j["ms"] = elapsed_ms(t0);
  std::cout << j.dump(2) << "\n";
  return recovered == D ? kExitOk : kExitMathFailure;
}

json sweep_record(long D, bool no_timings) {
  const auto t0 = std::chrono::steady_clock::now();
  json rec;
  rec["D"] = D;
  try {
    CFEngine cf(make_context(D));
    const auto& e = cf.expansion();
    rec["s"] = e.s;
    rec["u"] = e.u;
    rec["epsilon"] = element_json(cf.ctx(), cf.fundamental_unit());
    rec["epsilon_plus"] = element_json(cf.ctx(), cf.totally_positive_unit());
    const Int formula = count_ud_mod_units(cf);
    rec["ud_count"] = formula.get_str();
    const bool count_ok = formula == Int(static_cast<long>(ud_representatives(cf).size()));
    rec["count_ok"] = count_ok;
    const bool bounds_ok = norm_audit_run(cf, 6, 5, nullptr);
    rec["bound_audit"] = bounds_ok ? "pass" : "fail";
    ScrambledOracle oracle(cf, 1);
    Reconstructor r(oracle);
    const bool rec_ok = r.reconstruct() == D;
    rec["reconstruct"] = rec_ok ? "pass" : "fail";
    rec["ok"] = count_ok && bounds_ok && rec_ok;
  } catch (const std::exception& ex) {
    rec["ok"] = false;
    rec["error"] = ex.what();
  }
  if (!no_timings) rec["ms"] = elapsed_ms(t0);
  return rec;
}

int cmd_sweep(long from, long to, long jobs, const std::string& out_path,
              bool no_timings) {
  std::vector<long> ds, skipped;
  for (long D = from; D <= to; ++D) {
    bool sf = true;
    for (long p = 2; p * p <= D; ++p)
      if (D % (p * p) == 0) sf = false;
    (sf && D >= 2 ? ds : skipped).push_back(D);
  }
  std::vector<json> records(ds.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= ds.size()) return;
      records[k] = sweep_record(ds[k], no_timings);
    }
  };
  if (jobs < 1) jobs = 1;
  std::vector<std::thread> pool;
  for (long t = 0; t < jobs; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  std::ofstream file;
  std::ostream* os = &std::cout;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) throw std::runtime_error("cannot open output file");
    os = &file;
  }
  bool all_ok = true;
  for (const auto& rec : records) {
    all_ok = all_ok && rec.at("ok").get<bool>();
    (*os) << rec.dump() << "\n";
  }
  for (long D : skipped) (*os) << json{{"D", D}, {"skipped", true}}.dump() << "\n";
  return all_ok ? kExitOk : kExitMathFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Additive semigroup of totally positive integers in Q(sqrt(D))"};
  app.require_subcommand(1);
  app.fallthrough();
  bool no_timings = false;
  app.add_flag("--no-timings", no_timings, "omit timing fields (for byte-stable output)");

  long D = 0;
  auto* cf_cmd = app.add_subcommand("cf", "continued fraction expansion and units");
  cf_cmd->add_option("D", D)->required();

  long long ca = 0, cb = 0;
  auto* classify_cmd = app.add_subcommand("classify", "classify an element a + b*omega");
  classify_cmd->add_option("D", D)->required();
  classify_cmd->add_option("a", ca)->required();
  classify_cmd->add_option("b", cb)->required();

  long ind_count = -1, ind_trace = -1;
  bool with_conj = false;
  auto* ind_cmd = app.add_subcommand("indecomposables", "list the generator chain");
  ind_cmd->add_option("D", D)->required();
  auto* oc = ind_cmd->add_option("--count", ind_count, "number of beta_j, j >= 0");
  auto* ot = ind_cmd->add_option("--max-trace", ind_trace, "trace cutoff");
  oc->excludes(ot);
  ind_cmd->add_flag("--with-conjugates", with_conj, "include negative j");

  bool verify_brute = false;
  auto* count_cmd = app.add_subcommand("count-ud", "count UD orbits modulo units");
  count_cmd->add_option("D", D)->required();
  count_cmd->add_flag("--verify-brute", verify_brute, "check against enumeration");

  long max_ef = 8, max_i = 9;
  auto* audit_cmd = app.add_subcommand("norm-audit", "verify norm identities and bounds");
  audit_cmd->add_option("D", D)->required();
  audit_cmd->add_option("--max-ef", max_ef)->check(CLI::PositiveNumber);
  audit_cmd->add_option("--max-i", max_i)->check(CLI::PositiveNumber);

  std::uint64_t seed = 0;
  auto* rec_cmd = app.add_subcommand("reconstruct", "recover D from a scrambled oracle");
  rec_cmd->add_option("D", D)->required();
  rec_cmd->add_option("--seed", seed);

  long from = 2, to = 2, jobs = 0;
  std::string out_path;
  auto* sweep_cmd = app.add_subcommand("sweep", "batch checks over a range of D");
  sweep_cmd->add_option("--from", from)->required();
  sweep_cmd->add_option("--to", to)->required();
  sweep_cmd->add_option("--jobs", jobs);
  sweep_cmd->add_option("--out", out_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (*cf_cmd) return cmd_cf(D);
    if (*classify_cmd) return cmd_classify(D, ca, cb);
    if (*ind_cmd) {
      if ((ind_count < 0) == (ind_trace < 0)) {
        std::cerr << "exactly one of --count / --max-trace is required\n";
        return kExitUsage;
      }
      return cmd_indecomposables(D, ind_count, ind_trace, with_conj);
    }
    if (*count_cmd) return cmd_count_ud(D, verify_brute);
    if (*audit_cmd) return cmd_norm_audit(D, max_ef, max_i);
    if (*rec_cmd) return cmd_reconstruct(D, seed, no_timings);
    if (*sweep_cmd) {
      if (from < 2 || from > to) {
        std::cerr << "require 2 <= from <= to\n";
        return kExitUsage;
      }
      if (jobs <= 0) {
        if (const char* env = std::getenv("OKPLUS_JOBS")) jobs = std::atol(env);
        if (jobs <= 0) jobs = static_cast<long>(std::thread::hardware_concurrency());
        if (jobs <= 0) jobs = 1;
      }
      return cmd_sweep(from, to, jobs, out_path, no_timings);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitMathFailure;
  }
  return kExitUsage;
}
