/// @file qpv_main.cpp
/// @brief Command-line front end: case selection, pipeline orchestration,
///        verification reports, and serialization.
///
/// Subcommands:
///   info    print the root data, nilradical roots, grading normalization,
///           and coset length profile of a case
///   build   construct the quadratic algebra and its differential calculus
///           and write them as a deterministic JSON bundle
///   verify  run the selected verification suites and emit a JSON report
///
/// Exit codes: 0 success / all checks pass, 1 runtime or verification
/// failure, 2 usage error.  Nodes are numbered 1..rank on the command line.

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qpv/bgg.hpp"
#include "qpv/braiding.hpp"
#include "qpv/calculus.hpp"
#include "qpv/cartan.hpp"
#include "qpv/classical.hpp"
#include "qpv/linalg.hpp"
#include "qpv/module.hpp"
#include "qpv/qalgebra.hpp"
#include "qpv/scalar.hpp"
#include "qpv/weyl.hpp"

using nlohmann::json;
using namespace qpv;

namespace {

constexpr const char* kVersion = "0.1.0";

struct CaseSpec {
  std::string series = "A";
  int rank = 2;
  int node = 1;  // 1-based on the command line
  long max_degree = 4;
  std::string mode = "exact";
  int samples = 3;
  unsigned long seed = 1;
  std::string out;
  std::string chars;
  std::vector<std::string> suites{"all"};
};

long binom(long n, long k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (long s = 1; s <= k; ++s) r = r * (n - k + s) / s;
  return r;
}

std::string ivec_str(const IVec& v) {
  std::string s = "[";
  for (size_t k = 0; k < v.size(); ++k)
    s += (k ? " " : "") + std::to_string(v[k]);
  return s + "]";
}

ParabolicDatum make_case(const CaseSpec& cs) {
  const Series series = series_from_char(cs.series.at(0));
  const RootDatum dat = build_root_datum(series, cs.rank);
  const auto fail = [&]() -> Error {
    std::string list;
    for (int k : admissible_nodes(dat)) list += " " + std::to_string(k + 1);
    return Error("inadmissible-node",
                 "node " + std::to_string(cs.node) + " of " + cs.series +
                     "_" + std::to_string(cs.rank) +
                     " (nodes are 1-based); admissible nodes:" + list);
  };
  if (cs.node < 1 || cs.node > cs.rank) throw fail();
  try {
    return parabolic(dat, cs.node - 1);
  } catch (const Error& e) {
    if (e.code() == "inadmissible-node") throw fail();
    throw;
  }
}

// ------------------------------------------------------------------- info

int run_info(const CaseSpec& cs) {
  const ParabolicDatum par = make_case(cs);
  std::cout << "case: " << cs.series << "_" << cs.rank << ", marked node "
            << cs.node << "\n";
  std::cout << "nilradical dimension: " << par.n << "\n";
  std::cout << "(H0, H0) = " << par.h0_norm.get_str() << "\n";
  std::cout << "root order: q = v^" << par.D << "\n";
  std::cout << "Levi nodes:";
  for (int k : par.S) std::cout << " " << k + 1;
  std::cout << "\n";
  std::cout << "nilradical roots (simple-root coordinates) and generator "
               "weights (fundamental coordinates):\n";
  for (int k = 0; k < par.n; ++k)
    std::cout << "  z_" << k << ": root " << ivec_str(par.pminus_roots[k])
              << ", weight " << ivec_str(generator_weight(par, k)) << "\n";
  const std::vector<WeylElement> reps = generate_quotient(par.base, par.S);
  std::vector<long> profile(static_cast<size_t>(par.n) + 1, 0);
  for (const WeylElement& w : reps)
    ++profile[static_cast<size_t>(w.length)];
  std::cout << "coset length profile: [";
  for (size_t r = 0; r < profile.size(); ++r)
    std::cout << (r ? ", " : "") << profile[r];
  std::cout << "]\n";
  return 0;
}

// ------------------------------------------------------------------ build

json rules_json(const std::map<std::pair<int, int>, RuleRhs>& rules) {
  json arr = json::array();
  for (const auto& [lhs, rhs] : rules) {
    json terms = json::array();
    for (const auto& [k, m, c] : rhs)
      terms.push_back({{"monomial", {k, m}}, {"coefficient", c.to_string()}});
    arr.push_back({{"lhs", {lhs.first, lhs.second}}, {"rhs", terms}});
  }
  return arr;
}

json braiding_json(const Braiding& b) {
  json comps = json::array();
  for (const auto& c : b.spectrum)
    comps.push_back({{"highest_weight", c.nu},
                     {"eigenvalue", c.eigenvalue.to_string()},
                     {"sign", c.sign},
                     {"multiplicity", c.multiplicity}});
  return {{"convention", b.convention}, {"components", comps}};
}

// Graded character rows (degree, weight, multiplicity) of the polynomial
// algebra on the nilradical generators.
std::vector<std::tuple<long, IVec, long>> character_rows(
    const ParabolicDatum& par, long depth) {
  const IVec zero(static_cast<size_t>(par.base.rank), 0);
  const GVCharacter gv = gv_character(par, zero, depth);
  std::vector<std::tuple<long, IVec, long>> rows;
  for (long d = 0; d <= depth; ++d)
    for (const auto& [w, m] : gv.graded[static_cast<size_t>(d)])
      rows.emplace_back(d, w, m);
  return rows;
}

int run_build(const CaseSpec& cs) {
  const ParabolicDatum par = make_case(cs);
  const CalculusPresentation C = build_calculus(par);
  const Braiding self = self_braiding(pminus_module(par));
  const Braiding exchange = fodc_braiding(par);

  json datum;
  datum["n"] = par.n;
  datum["D"] = par.D;
  datum["h0_norm"] = par.h0_norm.get_str();
  json levi = json::array();
  for (int k : par.S) levi.push_back(k + 1);
  datum["levi_nodes"] = levi;
  json roots = json::array(), weights = json::array();
  for (int k = 0; k < par.n; ++k) {
    roots.push_back(par.pminus_roots[static_cast<size_t>(k)]);
    weights.push_back(generator_weight(par, k));
  }
  datum["nilradical_roots"] = roots;
  datum["generator_weights"] = weights;

  json bundle;
  bundle["version"] = kVersion;
  bundle["case"] = {
      {"series", cs.series}, {"rank", cs.rank}, {"node", cs.node}};
  bundle["datum"] = datum;
  bundle["presentation"] = {
      {"negative_eigenvalue", C.zz.negative_eigenvalue.to_string()},
      {"rules", rules_json(C.zz.rules)}};
  bundle["calculus"] = {{"zd_rules", rules_json(C.zd)},
                        {"dd_rules", rules_json(C.dd)}};
  bundle["braiding"] = {{"self", braiding_json(self)},
                        {"differential_exchange", braiding_json(exchange)}};
  json chars = json::array();
  for (const auto& [d, w, m] : character_rows(par, cs.max_degree))
    chars.push_back({{"degree", d}, {"weight", w}, {"multiplicity", m}});
  bundle["characters"] = chars;

  const std::string text = bundle.dump(2) + "\n";
  if (cs.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(cs.out, std::ios::binary);
    f << text;
    f.flush();
    if (!f) {
      std::cerr << "io-error: cannot write " << cs.out << "\n";
      return 1;
    }
  }
  if (!cs.chars.empty()) {
    std::ofstream f(cs.chars, std::ios::binary);
    f << "degree,weight,multiplicity\n";
    for (const auto& [d, w, m] : character_rows(par, cs.max_degree)) {
      f << d << ",";
      for (size_t k = 0; k < w.size(); ++k) f << (k ? " " : "") << w[k];
      f << "," << m << "\n";
    }
    f.flush();
    if (!f) {
      std::cerr << "io-error: cannot write " << cs.chars << "\n";
      return 1;
    }
  }
  return 0;
}

// ----------------------------------------------------------------- verify

struct CheckResult {
  std::string id, status, details;
  long long elapsed_ms = 0;
};

// Shared expensive artifacts, built on first use so that a construction
// failure is charged to every check that needs the artifact.
struct LazyCase {
  const ParabolicDatum& par;
  std::optional<QuadraticPresentation> P;
  std::optional<CalculusPresentation> C;
  const QuadraticPresentation& pres() {
    if (!P) P = presentation(par);
    return *P;
  }
  const CalculusPresentation& calc() {
    if (!C) C = build_calculus(par);
    return *C;
  }
};

template <typename Body>
void run_check(std::vector<CheckResult>& out, const std::string& id,
               Body&& body) {
  const auto t0 = std::chrono::steady_clock::now();
  CheckResult r{id, "pass", "", 0};
  try {
    r.details = body();
  } catch (const Error& e) {
    r.status = "fail";
    r.details = e.what();
  } catch (const std::exception& e) {
    r.status = "fail";
    r.details = e.what();
  }
  r.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                     std::chrono::steady_clock::now() - t0)
                     .count();
  out.push_back(std::move(r));
}

// Distinct rational values of the root v in (0, 1), reproducible from the
// seed (prime denominator, so every numerator is already reduced).
std::vector<mpq_class> make_samples(unsigned long seed, int count) {
  std::mt19937_64 gen(seed);
  std::set<unsigned long> seen;
  std::vector<mpq_class> out;
  while (static_cast<int>(out.size()) < count) {
    const unsigned long k = 1 + gen() % 1008;
    if (seen.insert(k).second)
      out.emplace_back(static_cast<long>(k), 1009L);
  }
  return out;
}

// Basis order of a weight module by growing weight (height relative to the
// first basis weight, then lexicographic).
std::vector<size_t> weight_ascending_order(const WeightModule& V) {
  std::vector<std::pair<std::pair<long, IVec>, size_t>> keyed;
  for (size_t r = 0; r < V.dim(); ++r) {
    IVec diff = V.weights[r];
    for (size_t k = 0; k < diff.size(); ++k) diff[k] -= V.weights[0][k];
    keyed.push_back({{height(fund_to_root(V.dat, diff)), V.weights[r]}, r});
  }
  std::sort(keyed.begin(), keyed.end());
  std::vector<size_t> order(V.dim());
  for (size_t r = 0; r < V.dim(); ++r) order[r] = keyed[r].second;
  return order;
}

void quadratic_checks(std::vector<CheckResult>& out, const CaseSpec& cs,
                      const ParabolicDatum& par, LazyCase& lazy) {
  const long n = par.n;
  run_check(out, "quadratic.negative-eigenvalue", [&] {
    const Braiding b = self_braiding(pminus_module(par));
    const Scalar expected = -q_power(mpq_class(4) / par.h0_norm, par.D);
    std::map<std::string, size_t> negative;  // value -> total multiplicity
    for (const auto& comp : b.spectrum)
      if (comp.sign < 0)
        negative[comp.eigenvalue.to_string()] += comp.multiplicity;
    if (negative.size() != 1)
      throw Error("mismatch", std::to_string(negative.size()) +
                                  " distinct negative eigenvalues");
    const auto& [value, mult] = *negative.begin();
    if (value != expected.to_string() ||
        mult != static_cast<size_t>(n * (n - 1) / 2))
      throw Error("mismatch", "negative eigenvalue " + value +
                                  " with multiplicity " +
                                  std::to_string(mult));
    const QuadraticPresentation& P = lazy.pres();
    if (!(P.negative_eigenvalue == expected))
      throw Error("mismatch", "presentation records a different eigenvalue");
    return "unique negative eigenvalue " + value + ", multiplicity " +
           std::to_string(mult);
  });
  run_check(out, "quadratic.hilbert-series", [&] {
    const std::vector<long> dims = hilbert_dims(lazy.pres(), cs.max_degree);
    for (long j = 0; j <= cs.max_degree; ++j)
      if (dims[static_cast<size_t>(j)] != binom(j + n - 1, n - 1))
        throw Error("mismatch",
                    "degree " + std::to_string(j) + " has dimension " +
                        std::to_string(dims[static_cast<size_t>(j)]));
    return "graded dimensions match C(j+n-1, n-1) for j <= " +
           std::to_string(cs.max_degree);
  });
  run_check(out, "quadratic.confluence", [&] {
    const ConfluenceCertificate cert = confluence_check(lazy.pres());
    if (!cert.all_resolved) throw Error("mismatch", "unresolved overlap");
    return std::to_string(cert.overlaps.size()) +
           " generator overlaps resolved";
  });
  run_check(out, "quadratic.triangularity", [&] {
    const WeightModule V = pminus_module(par);
    const Braiding b = self_braiding(V);
    const std::vector<size_t> order = weight_ascending_order(V);
    const size_t d = V.dim();
    const Mat<Scalar> pre = b.matrix * flip_matrix(d);
    std::vector<size_t> tensor_order(d * d);
    for (size_t a = 0; a < d; ++a)
      for (size_t bb = 0; bb < d; ++bb)
        tensor_order[a * d + bb] = order[a] * d + order[bb];
    const std::vector<mpq_class> points{mpq_class(1, 2), mpq_class(3, 5),
                                        mpq_class(9, 10)};
    for (const mpq_class& q0 : points)
      for (size_t r = 0; r < d * d; ++r)
        for (size_t c = 0; c <= r; ++c) {
          const int sg =
              sign_at_q(pre(tensor_order[r], tensor_order[c]), q0, V.D);
          const int want = (r == c) ? 1 : 0;
          if (sg != want)
            throw Error("mismatch", "entry (" + std::to_string(r) + ", " +
                                        std::to_string(c) + ") at q = " +
                                        q0.get_str());
        }
    return "triangular with positive diagonal at 3 rational points";
  });
}

void calculus_checks(std::vector<CheckResult>& out, const CaseSpec& cs,
                     const ParabolicDatum& par, LazyCase& lazy,
                     const std::vector<mpq_class>& samples) {
  const long n = par.n;
  run_check(out, "calculus.confluence", [&] {
    const ConfluenceCertificate cert = calculus_confluence(lazy.calc());
    if (!cert.all_resolved) throw Error("mismatch", "unresolved overlap");
    return std::to_string(cert.overlaps.size()) +
           " mixed overlaps resolved";
  });
  run_check(out, "calculus.constant-forms", [&] {
    for (long j = 0; j <= n + 1; ++j) {
      const long dim = lambda_const_dim(lazy.calc(), j);
      if (dim != binom(n, j))
        throw Error("mismatch", "degree " + std::to_string(j) +
                                    " has dimension " + std::to_string(dim));
    }
    return "constant-form dimensions match C(n, j) for j <= n + 1";
  });
  run_check(out, "calculus.bigraded-dimensions", [&] {
    long count = 0;
    for (long j = 0; j <= std::min<long>(n, cs.max_degree); ++j)
      for (long k = 0; j + k <= cs.max_degree; ++k) {
        const FormComponent comp = component_basis(lazy.calc(), j, k);
        const long want = binom(n, j) * binom(k + n - 1, n - 1);
        if (static_cast<long>(comp.basis.size()) != want)
          throw Error("mismatch", "bidegree (" + std::to_string(j) + ", " +
                                      std::to_string(k) + ") has dimension " +
                                      std::to_string(comp.basis.size()));
        ++count;
      }
    return std::to_string(count) + " bidegrees with j + k <= " +
           std::to_string(cs.max_degree) + " match C(n,j) C(k+n-1, n-1)";
  });
  run_check(out, "calculus.exactness", [&] {
    long slots = 0;
    for (long t = 1; t <= cs.max_degree; ++t)
      slots +=
          static_cast<long>(exactness_check(lazy.calc(), t, samples)
                                .slots.size());
    return std::to_string(slots) + " bidegree slots exact for t <= " +
           std::to_string(cs.max_degree) +
           (samples.empty() ? " (exact ranks)"
                            : " (" + std::to_string(samples.size()) +
                                  " sampled points, unanimous)");
  });
}

void bgg_checks(std::vector<CheckResult>& out, const CaseSpec& cs,
                const ParabolicDatum& par, LazyCase& lazy) {
  const long n = par.n;
  run_check(out, "bgg.shape-and-signs", [&] {
    const BGGShape sh = bgg_shape(par);
    for (unsigned variant : {1u, 2u}) {
      const SignAssignment sv =
          sign_assignment(par.base, sh.graph, variant);
      if (!gauge_equivalent(sh.graph, sh.signs, sv))
        throw Error("mismatch", "variant sign assignment " +
                                    std::to_string(variant) +
                                    " is not gauge equivalent");
    }
    std::string profile;
    for (const auto& ids : sh.by_length)
      profile += (profile.empty() ? "" : ", ") + std::to_string(ids.size());
    return "length profile [" + profile +
           "], square signs consistent, gauge unique";
  });
  run_check(out, "bgg.kostant-counts", [&] {
    for (int r = 0; r <= n; ++r) {
      long block = 0;
      for (const IVec& mu : kostant_weights(par, r))
        block += levi_dim(par.base, par.S, mu);
      if (block != binom(n, r))
        throw Error("mismatch", "length " + std::to_string(r) +
                                    " blocks have total dimension " +
                                    std::to_string(block));
    }
    return "per-length block dimensions match C(n, r)";
  });
  run_check(out, "bgg.character-identity", [&] {
    const long depth = std::min<long>(cs.max_degree, 4);
    for (long k = 0; k <= n; ++k)
      dual_derham_matches_bgg(lazy.calc(), k, depth);
    return "form characters match character sums for all k, levels <= " +
           std::to_string(depth);
  });
  run_check(out, "bgg.euler", [&] {
    const long depth = std::max<long>(6, cs.max_degree);
    euler_check(par, depth);
    return "alternating sums collapse for t <= " + std::to_string(depth);
  });
}

int run_verify(const CaseSpec& cs) {
  const ParabolicDatum par = make_case(cs);
  LazyCase lazy{par, {}, {}};
  std::set<std::string> suites(cs.suites.begin(), cs.suites.end());
  const bool all = suites.count("all") > 0;
  std::vector<mpq_class> samples;
  if (cs.mode == "sampled") samples = make_samples(cs.seed, cs.samples);

  std::vector<CheckResult> checks;
  if (all || suites.count("quadratic"))
    quadratic_checks(checks, cs, par, lazy);
  if (all || suites.count("calculus"))
    calculus_checks(checks, cs, par, lazy, samples);
  if (all || suites.count("bgg")) bgg_checks(checks, cs, par, lazy);
  std::sort(checks.begin(), checks.end(),
            [](const CheckResult& a, const CheckResult& b) {
              return a.id < b.id;
            });

  json points = json::array();
  for (const mpq_class& v : samples) points.push_back(v.get_str());
  json rep;
  rep["version"] = kVersion;
  rep["case"] = {{"series", cs.series},   {"rank", cs.rank},
                 {"node", cs.node},       {"max_degree", cs.max_degree},
                 {"mode", cs.mode},       {"samples", cs.samples},
                 {"sample_points", points}, {"seed", cs.seed}};
  rep["convention"] = {{"d_root", par.D}, {"t0_sign", 1}};
  json arr = json::array();
  bool ok = true;
  for (const CheckResult& c : checks) {
    ok = ok && c.status == "pass";
    arr.push_back({{"id", c.id},
                   {"status", c.status},
                   {"details", c.details},
                   {"elapsed_ms", c.elapsed_ms}});
  }
  rep["checks"] = arr;

  const std::string text = rep.dump(2) + "\n";
  if (cs.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(cs.out, std::ios::binary);
    f << text;
    f.flush();
    if (!f) {
      std::cerr << "io-error: cannot write " << cs.out << "\n";
      return 1;
    }
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Exact constructor and verifier for quantized polynomial algebras "
      "on cominuscule nilradicals and their differential calculi"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  CaseSpec cs;
  const auto add_case_flags = [&cs](CLI::App* cmd) {
    cmd->add_option("-t,--type", cs.series, "series letter (A, B, C, D)")
        ->required();
    cmd->add_option("-r,--rank", cs.rank, "rank of the series")->required();
    cmd->add_option("-n,--node", cs.node, "marked node, 1-based")
        ->required();
  };

  CLI::App* info = app.add_subcommand(
      "info", "print the case summary (roots, grading, length profile)");
  add_case_flags(info);

  CLI::App* build = app.add_subcommand(
      "build", "construct the algebra and calculus and write a JSON bundle");
  add_case_flags(build);
  build->add_option("--max-degree", cs.max_degree,
                    "character table depth (default 4)")
      ->check(CLI::Range(1L, 32L));
  build->add_option("--out", cs.out, "output path (default: stdout)");
  build->add_option("--chars", cs.chars,
                    "also write the character table as CSV to this path");

  CLI::App* verify = app.add_subcommand(
      "verify", "run verification suites and write a JSON report");
  add_case_flags(verify);
  verify->add_option("--max-degree", cs.max_degree,
                     "largest total degree checked (default 4)")
      ->check(CLI::Range(1L, 32L));
  verify
      ->add_option("--mode", cs.mode,
                   "rank arithmetic: exact or sampled (default exact)")
      ->check(CLI::IsMember({"exact", "sampled"}));
  verify
      ->add_option("--samples", cs.samples,
                   "number of sampled points (default 3)")
      ->check(CLI::Range(1, 16));
  verify->add_option("--seed", cs.seed,
                     "seed for the sampled points (default 1)");
  verify->add_option("--out", cs.out, "report path (default: stdout)");
  verify
      ->add_option("--suite", cs.suites,
                   "suites to run: quadratic, calculus, bgg, all "
                   "(repeatable; default all)")
      ->check(CLI::IsMember({"quadratic", "calculus", "bgg", "all"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (info->parsed()) return run_info(cs);
    if (build->parsed()) return run_build(cs);
    if (verify->parsed()) return run_verify(cs);
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    if (e.code() == "unsupported-type" || e.code() == "inadmissible-node")
      return 2;
    return 1;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
  return 2;
}
