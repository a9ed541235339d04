// Batch harness for subspace-table agreement experiments: table generation,
// agreement tests, decoding, and the spectral suites. Every randomized
// command takes an explicit --seed and all JSON outputs are byte-reproducible
// across reruns and worker counts.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "ldt/agreement.hpp"
#include "ldt/decoder.hpp"
#include "ldt/spectral.hpp"
#include "ldt/table.hpp"

using namespace ldt;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";

json envelope(const std::string& command, const json& config) {
  json j;
  j["tool"] = "ldtlab";
  j["version"] = kVersion;
  j["rng"] = "splitmix64 with per-task derived streams";
  j["command"] = command;
  j["config"] = config;
  return j;
}

void emit(const json& j, const std::string& out_path) {
  std::string text = j.dump(2);
  if (!out_path.empty()) {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) fail(Errc::FormatError, "cannot open " + out_path);
    out << text << "\n";
  }
  std::cout << text << "\n";
}

json rat_json(const Rat& r) {
  json j;
  j["rational"] = r.str();
  j["value"] = r.to_double();
  return j;
}

json estimate_json(const AgreementEstimate& est) {
  json j;
  j["mode"] = est.exact ? "exact" : "mc";
  if (est.exact) {
    j["value"] = est.value_exact.to_double();
    j["rational"] = est.value_exact.str();
  } else {
    j["value"] = est.value;
    j["stderr"] = est.stderr_;
    j["samples"] = est.samples;
    j["seed"] = est.seed;
  }
  return j;
}

json equiv_json(const EquivReport& rep) {
  json j;
  j["s"] = rep.s;
  j["k"] = rep.k;
  j["r"] = rep.r;
  j["alpha_srs"] = rat_json(rep.a_srs);
  j["alpha_sks"] = rat_json(rep.a_sks);
  j["alpha_sksr"] = rat_json(rep.a_sksr);
  j["kappa"] = rep.kappa.str();
  j["in_spectral_regime"] = rep.in_spectral_regime;
  json arr = json::array();
  for (const auto& c : rep.checks) {
    json cj;
    cj["name"] = c.name;
    cj["lhs"] = rat_json(c.lhs);
    cj["rhs"] = rat_json(c.rhs);
    cj["pass"] = c.pass;
    cj["normative"] = c.normative;
    arr.push_back(cj);
  }
  j["inequalities"] = arr;
  j["all_pass"] = rep.all_pass();
  return j;
}

json decode_json(const DecodeReport& rep) {
  json j;
  j["table_hash"] = rep.table_hash;
  j["epsilon_used"] = rep.epsilon_used;
  j["gamma_used"] = rep.gamma_used;
  j["no_candidate"] = rep.no_candidate;
  j["rounds"] = rep.rounds;
  json results = json::array();
  for (const auto& r : rep.results) {
    json rj;
    rj["g"] = poly_to_json(r.g);
    rj["support"] = rat_json(r.support);
    rj["x_index"] = r.x_index;
    rj["sigma"] = r.sigma;
    results.push_back(rj);
  }
  j["results"] = results;
  json cands = json::array();
  for (const auto& c : rep.candidates) {
    json cj;
    cj["x_index"] = c.x_index;
    cj["sigma"] = c.sigma;
    cj["mass1"] = rat_json(c.mass1);
    cj["fail2"] = c.fail2;
    cj["excellent"] = c.excellent;
    cj["advanced"] = c.advanced;
    cj["supporting_cubes"] = c.support_cubes;
    cands.push_back(cj);
  }
  j["candidates"] = cands;
  j["candidates_examined"] = rep.candidates.size();
  std::uint64_t excellent = 0;
  for (const auto& c : rep.candidates) excellent += c.excellent;
  j["excellent_candidates"] = excellent;
  return j;
}

json spectral_json(const SpectralReport& rep) {
  json j;
  j["case"] = rep.graph;
  j["m"] = rep.m;
  j["q"] = rep.q;
  j["lambda"] = rep.lambda;
  j["lambda_sq"] = rep.lambda_sq;
  if (rep.closed_form) j["closed_form"] = *rep.closed_form;
  j["target_exponent"] = rep.target_exponent;
  j["ratio"] = rep.ratio;
  j["method"] = rep.method;
  j["residual"] = rep.residual;
  j["iterations"] = rep.iterations;
  return j;
}

json sampling_json(const SamplingReport& rep) {
  json j;
  j["mu"] = rat_json(rep.mu);
  j["bprime_size"] = rep.bprime;
  j["lambda"] = rep.lambda;
  j["tv12"] = rat_json(rep.tv12);
  j["bound12"] = rep.bound12;
  j["pass12"] = rep.pass12;
  j["d3d4_checked"] = rep.d3d4_checked;
  if (rep.d3d4_checked) {
    j["tv34"] = rat_json(rep.tv34);
    j["bound34"] = rep.bound34;
    j["pass34"] = rep.pass34;
  }
  return j;
}

std::vector<double> parse_list_d(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
  return out;
}

std::vector<std::uint32_t> parse_list_u(const std::string& s) {
  std::vector<std::uint32_t> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(static_cast<std::uint32_t>(std::stoul(tok)));
  return out;
}

FieldCtx field_from_flags(std::uint32_t q, std::uint32_t e) {
  if (e <= 1) return FieldCtx::make(q, 1);
  // q is the field size; recover the characteristic from the e-th root
  std::uint32_t p = static_cast<std::uint32_t>(std::llround(std::pow(static_cast<double>(q), 1.0 / e)));
  for (std::uint32_t probe = p > 1 ? p - 1 : 1; probe <= p + 1; probe++) {
    std::uint64_t v = 1;
    for (std::uint32_t i = 0; i < e; i++) v *= probe;
    if (v == q) return FieldCtx::make(probe, e);
  }
  fail(Errc::NotPrime, "q is not a perfect e-th power");
}

struct GenArgs {
  std::uint32_t q = 5, e = 1;
  int m = 4, s = 3, d = 2;
  std::string gen = "honest";
  double rho = 0.5;
  int ngs = 2;
  std::string weights;
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_gen(const GenArgs& a) {
  FieldCtx F = field_from_flags(a.q, a.e);
  SubspaceTable T;
  if (a.gen == "honest" || a.gen == "planted" || a.gen == "mixture") {
    if (a.gen == "mixture") {
      std::vector<Poly> gs;
      for (int i = 0; i < a.ngs; i++) {
        Rng gr = Rng::stream(a.seed, 9000 + i);
        gs.push_back(random_poly(F, a.m, a.d, gr));
      }
      std::vector<double> w =
          a.weights.empty() ? std::vector<double>(a.ngs, 1.0 / a.ngs) : parse_list_d(a.weights);
      T = gen_mixture(F, a.m, a.s, gs, w, a.seed);
    } else {
      Rng gr = Rng::stream(a.seed, 9000);
      Poly g = random_poly(F, a.m, a.d, gr);
      T = a.gen == "honest" ? gen_honest(F, a.m, a.s, g, a.seed) : gen_planted(F, a.m, a.s, g, a.rho, a.seed);
    }
  } else if (a.gen == "halfhalf") {
    T = gen_halfhalf(F, a.m, a.s, a.d, a.seed);
  } else if (a.gen == "random") {
    T = gen_random(F, a.m, a.s, a.d, a.seed);
  } else {
    fail(Errc::SpecInvalid, "unknown generator " + a.gen);
  }
  if (a.out.empty()) fail(Errc::FormatError, "gen requires --out");
  T.save(a.out);
  json config = {{"q", a.q},   {"e", a.e},   {"m", a.m},         {"s", a.s},
                 {"d", a.d},   {"gen", a.gen}, {"rho", a.rho},   {"ngs", a.ngs},
                 {"weights", a.weights}, {"seed", a.seed}, {"out", a.out}};
  json j = envelope("gen", config);
  j["result"] = {{"path", a.out}, {"content_hash", T.content_hash()}, {"entries", T.size()}};
  emit(j, "");
  return 0;
}

struct TestArgs {
  std::string table;
  std::string spec = "cxc";
  std::string mode = "exact";
  std::uint64_t samples = 100000;
  std::uint64_t seed = 0;
  bool has_seed = false;
  std::string equiv;
  double kappa = 2.0;
  int workers = 1;
  std::uint64_t cap = 10000000;
  std::string out;
};

Rat rat_from_double_kappa(double kappa) {
  // kappa arrives as a decimal flag; keep it exact with denominator 1000
  return Rat(static_cast<std::int64_t>(std::llround(kappa * 1000)), 1000);
}

int cmd_test(const TestArgs& a) {
  SubspaceTable T = SubspaceTable::load(a.table);
  json config = {{"table", a.table}, {"spec", a.spec},     {"mode", a.mode}, {"samples", a.samples},
                 {"equiv", a.equiv}, {"kappa", a.kappa},   {"workers", a.workers},
                 {"cap", a.cap},     {"out", a.out}};
  if (a.has_seed) config["seed"] = a.seed;
  json j = envelope("test", config);
  j["inputs"] = {{"table_hash", T.content_hash()}};
  TestSpec spec = TestSpec::parse(a.spec);
  if (a.mode == "exact") {
    j["result"] = estimate_json(alpha_exact(T, spec, a.workers, a.cap));
  } else if (a.mode == "mc") {
    if (!a.has_seed) fail(Errc::SpecInvalid, "mc mode requires --seed");
    AgreementEstimate est = alpha_mc(T, spec, a.samples, a.seed, a.workers);
    est.seed = a.seed;
    j["result"] = estimate_json(est);
  } else {
    fail(Errc::SpecInvalid, "mode must be exact or mc");
  }
  if (!a.equiv.empty()) {
    auto v = parse_list_u(a.equiv);
    if (v.size() != 3) fail(Errc::SpecInvalid, "--equiv wants s,k,r");
    j["equivalence"] =
        equiv_json(equivalence_report(T, v[0], v[1], v[2], rat_from_double_kappa(a.kappa), a.workers, a.cap));
  }
  emit(j, a.out);
  return 0;
}

struct DecodeArgs {
  std::string table;
  double epsilon = -1, gamma = -1, min_support = 0.05;
  std::string mode = "practical";
  int candidates = 12, top = 4;
  bool list = false;
  std::uint64_t mc_samples = 128;
  std::uint64_t seed = 0;
  int workers = 1;
  std::uint64_t cap = 10000000;
  std::string out;
};

int cmd_decode(const DecodeArgs& a) {
  SubspaceTable T = SubspaceTable::load(a.table);
  DecoderParams P;
  P.epsilon = a.epsilon;
  P.gamma = a.gamma;
  P.mode = a.mode == "faithful" ? DecoderParams::Mode::TheoryFaithful : DecoderParams::Mode::Practical;
  if (a.mode != "faithful" && a.mode != "practical") fail(Errc::SpecInvalid, "mode must be practical or faithful");
  P.n_candidates = a.candidates;
  P.top_k = a.top;
  P.min_support = a.min_support;
  P.list_mode = a.list;
  P.mc_samples = a.mc_samples;
  P.seed = a.seed;
  P.workers = a.workers;
  P.cap = a.cap;
  json config = {{"table", a.table},   {"epsilon", a.epsilon},   {"gamma", a.gamma},
                 {"mode", a.mode},     {"candidates", a.candidates}, {"top", a.top},
                 {"list", a.list},     {"min_support", a.min_support}, {"mc_samples", a.mc_samples},
                 {"seed", a.seed},     {"workers", a.workers},   {"cap", a.cap}, {"out", a.out}};
  json j = envelope("decode", config);
  j["inputs"] = {{"table_hash", T.content_hash()}};
  auto t0 = std::chrono::steady_clock::now();
  DecodeReport rep = decode(T, P);
  // timings stay on stderr so the JSON is byte-reproducible
  std::fprintf(stderr, "decode: %.2f s (%d round%s)\n",
               std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(), rep.rounds,
               rep.rounds == 1 ? "" : "s");
  j["result"] = decode_json(rep);
  emit(j, a.out);
  if (rep.no_candidate) return exit_code_for(Errc::NoCandidate);
  return 0;
}

struct SpectraArgs {
  std::string cases;
  int m = 6;
  std::uint32_t q = 2;
  std::string qs;
  std::string sampling;
  double mu = 0.25;
  std::uint64_t trials = 20;
  bool d3d4 = false;
  std::string cond_side = "points";
  std::string subspace;
  bool claim_a2 = false;
  int k = 2;
  std::string grassmann;
  double kappa = 2.0;
  std::uint64_t seed = 0;
  bool has_seed = false;
  std::string out, csv;
};

int cmd_spectra(const SpectraArgs& a) {
  json config = {{"cases", a.cases}, {"m", a.m},         {"q", a.q},       {"qs", a.qs},
                 {"sampling", a.sampling}, {"mu", a.mu}, {"trials", a.trials}, {"d3d4", a.d3d4},
                 {"cond_side", a.cond_side}, {"subspace", a.subspace}, {"claim_a2", a.claim_a2},
                 {"k", a.k},         {"grassmann", a.grassmann}, {"kappa", a.kappa}, {"out", a.out},
                 {"csv", a.csv}};
  if (a.has_seed) config["seed"] = a.seed;
  json j = envelope("spectra", config);
  json result = json::object();

  if (!a.cases.empty()) {
    std::vector<std::uint32_t> qs = a.qs.empty() ? std::vector<std::uint32_t>{a.q} : parse_list_u(a.qs);
    json reports = json::array();
    std::string csv = "case,q,p,lambda,ratio\n";
    std::stringstream ss(a.cases);
    std::string tok;
    std::vector<std::string> case_names;
    while (std::getline(ss, tok, ',')) case_names.push_back(tok);
    for (const auto& name : case_names) {
      GraphCase c = graph_case_parse(name);
      for (std::uint32_t q : qs) {
        SpectralReport rep = lemma27_report(c, a.m, q);
        reports.push_back(spectral_json(rep));
        csv += std::string(graph_case_name(c)) + "," + std::to_string(q) + "," +
               std::to_string(rep.target_exponent) + "," + std::to_string(rep.lambda) + "," +
               std::to_string(rep.ratio) + "\n";
      }
    }
    result["cases"] = reports;
    if (!a.csv.empty()) {
      std::ofstream co(a.csv, std::ios::binary);
      co << csv;
    }
  }

  if (!a.sampling.empty()) {
    if (!a.has_seed) fail(Errc::SpecInvalid, "--sampling requires --seed");
    GraphCase c = graph_case_parse(a.sampling);
    InclusionGraph g = build_graph(c, a.m, a.q);
    bool cond_on_A = a.cond_side != "containers";
    std::uint64_t n_cond = cond_on_A ? g.nA : g.nB;
    double size_d = a.mu * static_cast<double>(n_cond);
    std::uint64_t size = static_cast<std::uint64_t>(std::llround(size_d));
    if (std::abs(size_d - static_cast<double>(size)) > 1e-9 || size == 0)
      fail(Errc::SpecInvalid, "mu does not give an integral subset size");
    json trials = json::array();
    std::uint64_t passes = 0;
    for (std::uint64_t t = 0; t < a.trials; t++) {
      SamplingReport rep = verify_sampling(g, cond_on_A, size, a.seed + t, a.d3d4);
      trials.push_back(sampling_json(rep));
      passes += rep.pass12 && (!a.d3d4 || rep.pass34);
    }
    result["sampling"] = {{"graph", graph_case_name(c)}, {"trials", trials}, {"passes", passes}};
    Claim44Report c44 = verify_claim44(g, cond_on_A, 100, a.seed);
    result["claim44"] = {{"trials", c44.trials}, {"failures", c44.failures}, {"worst_margin", c44.worst_margin}};
  }

  if (!a.subspace.empty()) {
    auto v = parse_list_u(a.subspace);
    if (v.size() != 3) fail(Errc::SpecInvalid, "--subspace wants r,k,s");
    SubspaceLemmaReport rep = verify_subspace_lemma(v[0], v[1], v[2], a.m, a.q, a.kappa);
    result["subspace_lemma"] = {{"r", rep.r},       {"k", rep.k},           {"s", rep.s},
                                {"lambda_sq", rep.lambda_sq}, {"exponent", rep.exponent},
                                {"scaled", rep.scaled},       {"pass", rep.pass}};
  }

  if (a.claim_a2) {
    ClaimA2Report rep = verify_claim_a2(a.k, a.m, a.q, a.kappa);
    result["claim_a2"] = {{"k", a.k},       {"lhs", rep.lhs},   {"rhs", rep.rhs},
                          {"ratio", rep.ratio}, {"pass", rep.pass}, {"method", rep.method}};
  }

  if (!a.grassmann.empty()) {
    auto v = parse_list_u(a.grassmann);
    if (v.size() != 2) fail(Errc::SpecInvalid, "--grassmann wants j,k");
    GrassmannEig ge = grassmann_eigenvalue(v[0], v[1], a.m, a.q);
    result["grassmann"] = {{"j", v[0]},
                           {"k", v[1]},
                           {"value", rat_json(ge.value)},
                           {"multiplicity", ge.multiplicity.str()}};
  }

  j["result"] = result;
  emit(j, a.out);
  return 0;
}

struct SweepArgs {
  std::string what;
  std::string cases = "g6";
  int m = 3;
  std::string qs = "2,3,5";
  std::string rhos = "0,0.25,0.5,0.75,1";
  std::uint32_t q = 5;
  int s = 3, d = 1, mm = 4;
  std::string spec = "cxc";
  std::uint64_t seed = 0;
  bool has_seed = false;
  int workers = 1;
  std::string out, csv;
};

int cmd_sweep(const SweepArgs& a) {
  json config = {{"what", a.what}, {"cases", a.cases}, {"m", a.m},   {"qs", a.qs}, {"rhos", a.rhos},
                 {"q", a.q},       {"s", a.s},         {"d", a.d},   {"mm", a.mm}, {"spec", a.spec},
                 {"workers", a.workers}, {"out", a.out}, {"csv", a.csv}};
  if (a.has_seed) config["seed"] = a.seed;
  json j = envelope("sweep", config);
  std::string csv;
  json rows = json::array();
  if (a.what == "spectra") {
    csv = "case,q,p,lambda,ratio\n";
    std::stringstream ss(a.cases);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      GraphCase c = graph_case_parse(tok);
      for (std::uint32_t q : parse_list_u(a.qs)) {
        SpectralReport rep = lemma27_report(c, a.m, q);
        rows.push_back(spectral_json(rep));
        csv += std::string(graph_case_name(c)) + "," + std::to_string(q) + "," +
               std::to_string(rep.target_exponent) + "," + std::to_string(rep.lambda) + "," +
               std::to_string(rep.ratio) + "\n";
      }
    }
  } else if (a.what == "agreement") {
    if (!a.has_seed) fail(Errc::SpecInvalid, "agreement sweep requires --seed");
    csv = "rho,alpha\n";
    FieldCtx F = FieldCtx::make(a.q, 1);
    Rng gr = Rng::stream(a.seed, 9000);
    Poly g = random_poly(F, a.mm, a.d, gr);
    for (double rho : parse_list_d(a.rhos)) {
      SubspaceTable T = gen_planted(F, a.mm, a.s, g, rho, a.seed);
      AgreementEstimate est = alpha_exact(T, TestSpec::parse(a.spec), a.workers);
      json row = {{"rho", rho}, {"alpha", estimate_json(est)}};
      rows.push_back(row);
      csv += std::to_string(rho) + "," + std::to_string(est.value) + "\n";
    }
  } else {
    fail(Errc::SpecInvalid, "sweep wants 'spectra' or 'agreement'");
  }
  j["result"] = {{"rows", rows}};
  if (!a.csv.empty()) {
    std::ofstream co(a.csv, std::ios::binary);
    co << csv;
  }
  emit(j, a.out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"subspace-table agreement testing laboratory"};
  app.require_subcommand(1);

  GenArgs ga;
  CLI::App* gen = app.add_subcommand("gen", "generate a table file");
  gen->add_option("--q", ga.q, "field size (prime unless --e is given)");
  gen->add_option("--e", ga.e, "extension degree");
  gen->add_option("--m", ga.m, "ambient dimension");
  gen->add_option("--s", ga.s, "entry subspace dimension");
  gen->add_option("--d", ga.d, "degree bound");
  gen->add_option("--gen", ga.gen, "honest|planted|halfhalf|mixture|random");
  gen->add_option("--rho", ga.rho, "planted fraction");
  gen->add_option("--ngs", ga.ngs, "mixture component count");
  gen->add_option("--weights", ga.weights, "mixture weights, comma separated");
  gen->add_option("--seed", ga.seed, "rng seed")->required();
  gen->add_option("--out", ga.out, "output path")->required();

  TestArgs ta;
  CLI::App* test = app.add_subcommand("test", "run an agreement test");
  test->add_option("--table", ta.table, "table file")->required();
  test->add_option("--spec", ta.spec, "cxc|plp|pxp|clc|s,k,r");
  test->add_option("--mode", ta.mode, "exact|mc");
  test->add_option("--samples", ta.samples, "mc sample count");
  auto* tseed = test->add_option("--seed", ta.seed, "rng seed (mc)");
  test->add_option("--equiv", ta.equiv, "also check equivalences at s,k,r");
  test->add_option("--kappa", ta.kappa, "upper-bound slack factor");
  test->add_option("--workers", ta.workers, "worker threads");
  test->add_option("--cap", ta.cap, "enumeration cap");
  test->add_option("--out", ta.out, "output path");

  DecodeArgs da;
  CLI::App* dec = app.add_subcommand("decode", "run the decoder pipeline");
  dec->add_option("--table", da.table, "cube table file")->required();
  dec->add_option("--epsilon", da.epsilon, "agreement threshold (default: measured)");
  dec->add_option("--gamma", da.gamma, "consistency parameter");
  dec->add_option("--mode", da.mode, "practical|faithful");
  dec->add_option("--candidates", da.candidates, "points examined");
  dec->add_option("--top", da.top, "candidates passed to correction");
  dec->add_flag("--list", da.list, "list-decoding iteration");
  dec->add_option("--min-support", da.min_support, "list-mode stop threshold");
  dec->add_option("--mc-samples", da.mc_samples, "majority votes per point");
  dec->add_option("--seed", da.seed, "rng seed")->required();
  dec->add_option("--workers", da.workers, "worker threads");
  dec->add_option("--cap", da.cap, "enumeration cap");
  dec->add_option("--out", da.out, "output path");

  SpectraArgs sa;
  CLI::App* spe = app.add_subcommand("spectra", "spectral reports and sampling lemmas");
  spe->add_option("--cases", sa.cases, "comma list of g1..g6");
  spe->add_option("--m", sa.m, "ambient dimension");
  spe->add_option("--q", sa.q, "field size");
  spe->add_option("--qs", sa.qs, "comma list of q for a sweep");
  spe->add_option("--sampling", sa.sampling, "graph case for the sampling lemmas");
  spe->add_option("--mu", sa.mu, "conditioned subset measure");
  spe->add_option("--trials", sa.trials, "random subsets tried");
  spe->add_flag("--d3d4", sa.d3d4, "also check the pair-sampling lemma");
  spe->add_option("--cond-side", sa.cond_side, "points|containers");
  spe->add_option("--subspace", sa.subspace, "verify the containment-pair bound at r,k,s");
  spe->add_flag("--claim-a2", sa.claim_a2, "verify the codimension-2 eigenvalue gap");
  spe->add_option("--k", sa.k, "walk dimension for --claim-a2");
  spe->add_option("--grassmann", sa.grassmann, "eigenvalue j,k of the Grassmann walk");
  spe->add_option("--kappa", sa.kappa, "slack factor");
  auto* sseed = spe->add_option("--seed", sa.seed, "rng seed (sampling)");
  spe->add_option("--out", sa.out, "output path");
  spe->add_option("--csv", sa.csv, "CSV sidecar for case sweeps");

  SweepArgs wa;
  CLI::App* swp = app.add_subcommand("sweep", "parameter sweeps with CSV output");
  swp->add_option("what", wa.what, "spectra|agreement")->required();
  swp->add_option("--cases", wa.cases, "spectra: comma list of cases");
  swp->add_option("--m", wa.m, "spectra: ambient dimension");
  swp->add_option("--qs", wa.qs, "spectra: q grid");
  swp->add_option("--rhos", wa.rhos, "agreement: rho grid");
  swp->add_option("--q", wa.q, "agreement: field size");
  swp->add_option("--mm", wa.mm, "agreement: ambient dimension");
  swp->add_option("--s", wa.s, "agreement: entry dimension");
  swp->add_option("--d", wa.d, "agreement: degree bound");
  swp->add_option("--spec", wa.spec, "agreement: test spec");
  auto* wseed = swp->add_option("--seed", wa.seed, "rng seed");
  swp->add_option("--workers", wa.workers, "worker threads");
  swp->add_option("--out", wa.out, "output path");
  swp->add_option("--csv", wa.csv, "CSV sidecar");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    ta.has_seed = tseed->count() > 0;
    sa.has_seed = sseed->count() > 0;
    wa.has_seed = wseed->count() > 0;
    if (gen->parsed()) return cmd_gen(ga);
    if (test->parsed()) return cmd_test(ta);
    if (dec->parsed()) return cmd_decode(da);
    if (spe->parsed()) return cmd_spectra(sa);
    if (swp->parsed()) return cmd_sweep(wa);
  } catch (const Error& e) {
    json err = {{"error", errc_name(e.code())}, {"message", e.what()}};
    std::cout << err.dump(2) << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    json err = {{"error", "Unexpected"}, {"message", e.what()}};
    std::cout << err.dump(2) << "\n";
    return 2;
  }
  return 0;
}
