// Acceptance suite: one line per criterion, non-zero exit when any fails.
// Heavy end-to-end runs live here rather than in the unit tests.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ldt/agreement.hpp"
#include "ldt/decoder.hpp"
#include "ldt/spectral.hpp"
#include "ldt/table.hpp"

using namespace ldt;

namespace {

int g_workers = 2;
std::string g_cli;
int g_failures = 0;

void report(int crit, bool pass, const std::string& name, const std::string& detail) {
  std::printf("[%s] criterion %2d: %s — %s\n", pass ? "PASS" : "FAIL", crit, name.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!pass) g_failures++;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---------------------------------------------------------------- criterion 1
void criterion1() {
  FieldCtx F = FieldCtx::make(11, 1);
  bool ok = true;
  double worst_time = 0;
  std::string why;
  for (std::uint64_t i = 0; i < 10 && ok; i++) {
    auto t0 = std::chrono::steady_clock::now();
    Rng gr = Rng::stream(1000 + i, 0);
    Poly g = random_poly(F, 4, 2, gr);
    SubspaceTable T = gen_honest(F, 4, 3, g, 1000 + i);
    AgreementEstimate est = alpha_exact(T, TestSpec::parse("cxc"), g_workers);
    if (!(est.value_exact == Rat(1))) {
      ok = false;
      why = "agreement not exactly 1";
      break;
    }
    DecoderParams P;
    P.seed = 2000 + i;
    P.workers = g_workers;
    DecodeReport rep = decode(T, P);
    if (rep.results.size() != 1 || !(rep.results[0].g == g) || !(rep.results[0].support == Rat(1))) {
      ok = false;
      why = "decode did not return the plant with support 1";
      break;
    }
    double dt = seconds_since(t0);
    worst_time = std::max(worst_time, dt);
    if (dt > 60.0) {
      ok = false;
      why = "instance exceeded 60 s";
    }
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "10 honest GF(11)^4 instances, worst instance %.1f s%s%s", worst_time,
                ok ? "" : "; ", why.c_str());
  report(1, ok, "honest completeness", buf);
}

// ---------------------------------------------------------------- criterion 2
void criterion2() {
  FieldCtx F = FieldCtx::make(11, 1);
  SubspaceTable R = gen_random(F, 4, 3, 2, 21);
  double ar = alpha_exact(R, TestSpec::parse("cxc"), g_workers).value;
  SubspaceTable H = gen_halfhalf(F, 4, 3, 2, 22);
  double ah = alpha_exact(H, TestSpec::parse("cxc"), g_workers).value;
  bool ok = std::abs(ar - 1.0 / 11) <= 0.02 && std::abs(ah - 0.5) <= 0.02;
  char buf[160];
  std::snprintf(buf, sizeof buf, "random alpha = %.4f (1/q = %.4f), halfhalf alpha = %.4f", ar, 1.0 / 11, ah);
  report(2, ok, "section-1 prose baselines", buf);
}

// ---------------------------------------------------------------- criterion 3
void criterion3() {
  FieldCtx F = FieldCtx::make(5, 1);
  int runs = 0, lower_fail = 0, upper_fail = 0, chain_fail = 0;
  bool printed_form_failed_somewhere = false;
  for (int s : {2, 3}) {
    std::vector<SubspaceTable> tables;
    for (std::uint64_t seed : {31ull, 32ull}) {
      Rng gr = Rng::stream(seed, 0);
      Poly g = random_poly(F, 4, 1, gr);
      Poly g2 = random_poly(F, 4, 1, gr);
      tables.push_back(gen_honest(F, 4, s, g, seed));
      tables.push_back(gen_planted(F, 4, s, g, 0.2, seed));
      tables.push_back(gen_planted(F, 4, s, g, 0.5, seed));
      tables.push_back(gen_planted(F, 4, s, g, 0.8, seed));
      tables.push_back(gen_halfhalf(F, 4, s, 1, seed));
      tables.push_back(gen_mixture(F, 4, s, {g, g2}, {0.5, 0.5}, seed));
    }
    for (const auto& T : tables) {
      EquivReport rep = equivalence_report(T, s, 1, 0, Rat(2), g_workers);
      runs++;
      for (const auto& c : rep.checks) {
        if (c.name == "lower_srs_minus_beta_le_sks_scaled" && !c.pass) lower_fail++;
        if (c.name == "upper_sks_le_srs_plus_kappa_q_pow" && !c.pass) upper_fail++;
        if ((c.name == "chain_sks_le_sksr" || c.name == "chain_sksr_ge_srs") && !c.pass) chain_fail++;
        if (c.name == "lower_as_printed_srs_scaled_le_sks" && !c.pass) printed_form_failed_somewhere = true;
      }
    }
  }
  bool ok = runs >= 20 && lower_fail == 0 && upper_fail == 0 && chain_fail == 0;
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "%d tables, proof-exact lower bound %d fails, upper (kappa=2) %d fails, chain %d fails", runs,
                lower_fail, upper_fail, chain_fail);
  report(3, ok, "test equivalence inequalities", buf);
  // the printed rearrangement of the lower bound is a known misstatement;
  // pin that it genuinely fails on these tables so the corrected form is
  // never mistaken for a weakening
  report(3, printed_form_failed_somewhere, "  (note: printed lower-bound form)",
         printed_form_failed_somewhere
             ? "as-printed alpha_srs(1-d/q) <= alpha_sks fails on planted tables, matching the ledger analysis"
             : "expected the printed form to fail somewhere; revisit the analysis");
}

// ---------------------------------------------------------------- criterion 4
void criterion4() {
  FieldCtx F = FieldCtx::make(11, 1);
  for (double rho : {0.8, 0.5}) {
    int good = 0;
    for (std::uint64_t trial = 0; trial < 10; trial++) {
      Rng gr = Rng::stream(4000 + trial, 0);
      Poly g = random_poly(F, 4, 2, gr);
      SubspaceTable T = gen_planted(F, 4, 3, g, rho, 4000 + trial);
      DecoderParams P;
      P.seed = 5000 + trial;
      P.gamma = 0.05;
      P.workers = g_workers;
      DecodeReport rep = decode(T, P);
      if (!rep.results.empty() && rep.results[0].g == g &&
          std::abs(rep.results[0].support.to_double() - rho) <= 0.05)
        good++;
    }
    char buf[120];
    std::snprintf(buf, sizeof buf, "rho = %.1f recovered in %d/10 seeded trials", rho, good);
    report(4, good >= 9, "decoder on planted cubes", buf);
  }
  int both = 0;
  for (std::uint64_t trial = 0; trial < 10; trial++) {
    Rng gr = Rng::stream(6000 + trial, 0);
    Poly g1 = random_poly(F, 4, 2, gr);
    Poly g2 = random_poly(F, 4, 2, gr);
    SubspaceTable T = gen_mixture(F, 4, 3, {g1, g2}, {0.5, 0.5}, 6000 + trial);
    DecoderParams P;
    P.seed = 7000 + trial;
    P.gamma = 0.05;
    P.list_mode = true;
    P.workers = g_workers;
    DecodeReport rep = decode(T, P);
    bool has1 = false, has2 = false;
    for (const auto& r : rep.results) {
      has1 = has1 || r.g == g1;
      has2 = has2 || r.g == g2;
    }
    if (has1 && has2) both++;
  }
  char buf[120];
  std::snprintf(buf, sizeof buf, "half/half mixture: both plants listed in %d/10 trials", both);
  report(4, both >= 8, "decoder list mode on mixtures", buf);
}

// ---------------------------------------------------------------- criterion 5
void criterion5() {
  FieldCtx F = FieldCtx::make(11, 1);
  int good = 0;
  for (std::uint64_t trial = 0; trial < 100; trial++) {
    Rng sr = Rng::stream(8000 + trial, 0);
    Poly g = random_poly(F, 2, 2, sr);
    std::vector<Fel> f(121);
    for (std::uint64_t i = 0; i < 121; i++) f[i] = evaluate(F, g, point_of_index(F, 2, i));
    std::set<std::uint64_t> where;
    while (where.size() < 3) where.insert(sr.below(121));  // floor(121/32)
    for (auto w : where) f[w] = F.add(f[w], static_cast<Fel>(1 + sr.below(10)));
    CorrectOutcome co = self_correct(F, 2, 2, f, 20000, 64, 8000 + trial);
    if (co.status == CorrectStatus::Ok && co.g == g && co.disagreement <= Rat(2, 32)) good++;
  }
  char buf[120];
  std::snprintf(buf, sizeof buf, "exact recovery with distance <= 2 delta in %d/100 corrupted runs", good);
  report(5, good >= 95, "majority self-correction", buf);

  // neighborhood rate vs brute-force (y, h) oracle at q = 5, m = 2
  FieldCtx F5 = FieldCtx::make(5, 1);
  bool oracle_ok = true;
  Rng rr(42);
  for (int trial = 0; trial < 10 && oracle_ok; trial++) {
    std::vector<Fel> f(25);
    for (auto& v : f) v = static_cast<Fel>(rr.below(5));
    for (int d = 1; d <= 2 && oracle_ok; d++) {
      std::int64_t ok_cnt = 0;
      for (std::uint64_t yi = 0; yi < 25; yi++)
        for (std::uint64_t hi = 0; hi < 25; hi++) {
          Point y = point_of_index(F5, 2, yi), h = point_of_index(F5, 2, hi);
          std::vector<std::vector<Fel>> pts;
          std::vector<Fel> vals;
          for (int i = 0; i <= d + 1; i++) {
            Point pt(2);
            for (int j = 0; j < 2; j++)
              pt[j] = F5.add(y[j], F5.mul(static_cast<Fel>(i % 5), F5.sub(h[j], y[j])));
            pts.push_back({static_cast<Fel>(i)});
            vals.push_back(f[point_index(F5, pt)]);
          }
          bool fits;
          try {
            interpolate(F5, pts, vals, 1, d);
            fits = true;
          } catch (const Error& e) {
            fits = e.code() == Errc::Underdetermined;
          }
          ok_cnt += fits;
        }
      oracle_ok = neighborhood_rate_exact(F5, 2, d, f) == Rat(ok_cnt, 625);
    }
  }
  report(5, oracle_ok, "neighborhood rate vs brute-force oracle",
         oracle_ok ? "formula equals enumeration on 10 random vectors, d in {1,2}" : "mismatch");
}

// ---------------------------------------------------------------- criterion 6
void criterion6() {
  bool ok6 = true;
  std::string detail;
  for (std::uint32_t q : {2u, 3u, 5u}) {
    SpectralReport rep = lambda_of(build_graph(GraphCase::G6, 3, q));
    double band = 1.0 / (static_cast<double>(q) * q * q - 1);
    if (!(rep.lambda_sq >= 1.0 / q - band - 1e-12 && rep.lambda_sq <= 1.0 / q + band + 1e-12)) {
      ok6 = false;
      detail = "g6 band violated at q=" + std::to_string(q);
    }
  }
  SpectralReport g1 = lemma27_report(GraphCase::G1, 6, 2);
  if (!g1.closed_form || std::abs(g1.lambda_sq - *g1.closed_form) > 1e-6) {
    ok6 = false;
    detail += " g1 closed-form residual too large";
  }
  FactA1Report fa = verify_grassmann_walk(2, 4, 2);
  if (!fa.ok) {
    ok6 = false;
    detail += " Grassmann walk multiset mismatch";
  }
  if (ok6)
    detail = "g6 bands at q in {2,3,5}; g1 closed form to 1e-6; dense (2,1)-walk eigenvalues exact";
  report(6, ok6, "spectral closed forms", detail);
}

// ---------------------------------------------------------------- criterion 7
void criterion7() {
  bool ok = true;
  std::string worst;
  auto check_case = [&](GraphCase c, int m, std::vector<std::uint32_t> qs) {
    double prev_gap = 1e9;
    for (std::uint32_t q : qs) {
      SpectralReport rep = lemma27_report(c, m, q);
      if (rep.ratio < 0.5 || rep.ratio > 2.0) {
        ok = false;
        worst += std::string(graph_case_name(c)) + "@q" + std::to_string(q) + " ratio " +
                 std::to_string(rep.ratio) + " ";
      }
      double gap = std::abs(rep.ratio - 1.0);
      if (gap > prev_gap + 0.02) {
        ok = false;
        worst += std::string(graph_case_name(c)) + " trend broken at q" + std::to_string(q) + " ";
      }
      prev_gap = gap;
    }
  };
  for (GraphCase c : {GraphCase::G1, GraphCase::G2, GraphCase::G3, GraphCase::G4, GraphCase::G5})
    check_case(c, 6, {2, 3});
  check_case(GraphCase::G6, 3, {2, 3, 5, 7});
  report(7, ok, "lambda asymptotics across q",
         ok ? "g1..g5 at m=6, q in {2,3} and g6 at m=3, q in {2,3,5,7}: ratios in [0.5,2], moving toward 1"
            : worst);
}

// ---------------------------------------------------------------- criterion 8
void criterion8() {
  bool ok = true;
  std::string detail;
  for (GraphCase c : {GraphCase::G6, GraphCase::G4}) {
    InclusionGraph g = build_graph(c, 3, 2);
    for (std::uint64_t size : {1, 2, 4}) {
      for (std::uint64_t t = 0; t < 20; t++) {
        SamplingReport rep = verify_sampling(g, true, size, 9000 + t, true);
        if (!rep.pass12 || !rep.pass34) {
          ok = false;
          detail = std::string("bound violated on ") + graph_case_name(c);
        }
      }
    }
    Claim44Report c44 = verify_claim44(g, true, 100, 9100);
    if (c44.failures != 0) {
      ok = false;
      detail += " inner-product bound failed";
    }
  }
  report(8, ok, "edge/pair sampling lemmas",
         ok ? "g6 and g4 at (m,q)=(3,2): 120 subset draws each pass; 100 indicator checks per graph" : detail);
}

// ---------------------------------------------------------------- criterion 9
void criterion9() {
  FieldCtx F = FieldCtx::make(5, 1);
  bool routes_ok = true;
  Rng gr(91);
  Poly g = random_poly(F, 4, 1, gr);
  Poly g2 = random_poly(F, 4, 1, gr);
  std::vector<SubspaceTable> suite;
  suite.push_back(gen_honest(F, 4, 3, g, 1));
  suite.push_back(gen_planted(F, 4, 3, g, 0.3, 2));
  suite.push_back(gen_planted(F, 4, 3, g, 0.7, 3));
  suite.push_back(gen_halfhalf(F, 4, 3, 1, 4));
  suite.push_back(gen_mixture(F, 4, 3, {g, g2}, {0.5, 0.5}, 5));
  suite.push_back(gen_random(F, 4, 3, 1, 6));
  for (const auto& T : suite)
    routes_ok = routes_ok && alpha_exact(T, TestSpec::parse("cxc"), g_workers).value_exact ==
                                 alpha_exact_pointhist(T, TestSpec::parse("cxc"), g_workers).value_exact;

  bool restrict_ok = true;
  AffineSubspace whole = whole_space(4);
  Rng rr(92);
  for (int i = 0; i < 1000 && restrict_ok; i++) {
    Poly p = random_poly(F, 4, 2, rr);
    int k = 1 + static_cast<int>(rr.below(3));
    AffineSubspace S = sample_uniform(F, SubspaceFamily::all(4, k), rr);
    restrict_ok = restrict_poly(F, p, whole, S) == restrict_poly_interp(F, p, whole, S);
  }

  bool canon_ok = true;
  FieldCtx F3 = FieldCtx::make(3, 1);
  Rng cr(93);
  for (int i = 0; i < 10000 && canon_ok; i++) {
    int k = 1 + static_cast<int>(cr.below(2));
    AffineSubspace S1 = sample_uniform(F3, SubspaceFamily::all(3, k), cr);
    AffineSubspace S2 = sample_uniform(F3, SubspaceFamily::all(3, k), cr);
    std::set<std::uint64_t> p1, p2;
    for (const Point& p : points_of(F3, S1)) p1.insert(point_index(F3, p));
    for (const Point& p : points_of(F3, S2)) p2.insert(point_index(F3, p));
    canon_ok = (p1 == p2) == (S1 == S2);
  }
  bool ok = routes_ok && restrict_ok && canon_ok;
  std::string detail = std::string("independent exact routes ") + (routes_ok ? "agree" : "DISAGREE") +
                       "; 1000 restriction cross-checks " + (restrict_ok ? "agree" : "DISAGREE") +
                       "; 10000 canonicalization pairs " + (canon_ok ? "agree" : "DISAGREE");
  report(9, ok, "oracle equivalences", detail);
}

// --------------------------------------------------------------- criterion 10
std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_cli(const std::string& args) {
  std::string cmd = g_cli + " " + args + " > /dev/null 2>&1";
  return std::system(cmd.c_str());
}

void criterion10() {
  if (g_cli.empty()) {
    report(10, false, "CLI determinism", "no --cli path given");
    return;
  }
  std::string dir = "/tmp/ldt_accept";
  std::system(("rm -rf " + dir + " && mkdir -p " + dir).c_str());
  bool ok = true;
  std::string detail;

  // reruns use the identical command line (the config echo includes every
  // flag), so the artifact path is reused and snapshotted between runs
  auto rerun_same = [&](const std::string& args, const std::string& path, const std::string& what) {
    run_cli(args);
    std::string first = slurp(path);
    run_cli(args);
    if (first.empty() || first != slurp(path)) {
      ok = false;
      detail += what + " rerun differs; ";
    }
    return first;
  };
  // worker count and destination path appear only in the config echo;
  // strip those lines for the cross-worker comparison
  auto strip_workers = [](std::string s) {
    for (const char* key : {"\"workers\"", "\"out\""}) {
      auto pos = s.find(key);
      if (pos != std::string::npos) s.erase(pos, s.find('\n', pos) - pos + 1);
    }
    return s;
  };

  rerun_same("gen --q 5 --m 4 --s 3 --d 1 --gen planted --rho 0.5 --seed 5 --out " + dir + "/t.json",
             dir + "/t.json", "gen");

  std::string e1 = rerun_same("test --table " + dir + "/t.json --spec cxc --equiv 3,1,0 --workers 1 --out " +
                                  dir + "/e.json",
                              dir + "/e.json", "test");
  run_cli("test --table " + dir + "/t.json --spec cxc --equiv 3,1,0 --workers 4 --out " + dir + "/e4.json");
  if (strip_workers(e1) != strip_workers(slurp(dir + "/e4.json"))) {
    ok = false;
    detail += "test workers differ; ";
  }

  rerun_same("test --table " + dir + "/t.json --spec cxc --mode mc --samples 20000 --seed 7 --workers 1 --out " +
                 dir + "/m.json",
             dir + "/m.json", "mc");
  {
    run_cli("test --table " + dir + "/t.json --spec cxc --mode mc --samples 20000 --seed 7 --workers 4 --out " +
            dir + "/m4.json");
    if (strip_workers(slurp(dir + "/m.json")) != strip_workers(slurp(dir + "/m4.json"))) {
      ok = false;
      detail += "mc workers differ; ";
    }
  }

  std::string d1 = rerun_same("decode --table " + dir + "/t.json --seed 9 --workers 1 --out " + dir + "/d.json",
                              dir + "/d.json", "decode");
  run_cli("decode --table " + dir + "/t.json --seed 9 --workers 4 --out " + dir + "/d4.json");
  if (strip_workers(d1) != strip_workers(slurp(dir + "/d4.json"))) {
    ok = false;
    detail += "decode workers differ; ";
  }

  rerun_same("spectra --cases g6 --m 3 --q 2 --sampling g6 --mu 0.25 --trials 5 --d3d4 --seed 3 --out " + dir +
                 "/s.json",
             dir + "/s.json", "spectra");

  report(10, ok, "CLI determinism", ok ? "gen/test/mc/decode/spectra byte-identical across reruns and workers" : detail);

  // exit-code contract: 2 validation, 3 cap exceeded, 4 no candidate
  int c2 = run_cli("gen --q 4 --m 3 --s 2 --d 1 --gen random --seed 1 --out " + dir + "/bad.json");
  int c2b = run_cli("gen --q 4 --e 2 --m 3 --s 2 --d 1 --gen random --seed 1 --out " + dir + "/gf4.json");
  int c3 = run_cli("test --table " + dir + "/t.json --spec cxc --cap 10");
  run_cli("gen --q 5 --m 4 --s 3 --d 1 --gen random --seed 2 --out " + dir + "/r.json");
  int c4 = run_cli("decode --table " + dir + "/r.json --epsilon 0.5 --seed 3");
  auto code = [](int status) { return WEXITSTATUS(status); };
  bool codes_ok = code(c2) == 2 && code(c2b) == 0 && code(c3) == 3 && code(c4) == 4;
  char cbuf[160];
  std::snprintf(cbuf, sizeof cbuf,
                "NotPrime->%d (GF(4) with --e ok->%d), CapExceeded->%d, NoCandidate->%d", code(c2),
                code(c2b), code(c3), code(c4));
  report(10, codes_ok, "CLI exit codes", cbuf);
}

}  // namespace

int main(int argc, char** argv) {
  for (int i = 1; i + 1 < argc; i += 2) {
    std::string flag = argv[i];
    if (flag == "--cli") g_cli = argv[i + 1];
    if (flag == "--workers") g_workers = std::atoi(argv[i + 1]);
  }
  auto t0 = std::chrono::steady_clock::now();
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  criterion10();
  std::printf("acceptance: %s (%d failing) in %.1f s\n", g_failures == 0 ? "ALL PASS" : "FAILURES",
              g_failures, seconds_since(t0));
  return g_failures == 0 ? 0 : 1;
}
