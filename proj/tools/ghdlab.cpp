// ghdlab: batch experiment runner.
//
// Exit codes: 0 all asserted checks held, 1 a check failed, 2 usage error,
// 3 runtime error (I/O, malformed input, unreachable promise).

#include <CLI11.hpp>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "ghdlab/concentration.hpp"
#include "ghdlab/delta_net.hpp"
#include "ghdlab/evaluation.hpp"
#include "ghdlab/instances.hpp"
#include "ghdlab/protocols.hpp"
#include "ghdlab/reductions.hpp"
#include "ghdlab/round_elim.hpp"
#include "ghdlab/serialize.hpp"
#include "ghdlab/streaming.hpp"

using namespace ghdlab;

namespace {

enum Exit { kOk = 0, kCheckFailed = 1, kUsage = 2, kRuntime = 3 };

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Common {
  std::uint64_t seed = 0;
  std::uint64_t trials = 0;  // 0: subcommand default
  int workers = 0;
  std::string out;
  std::string format = "json";
};

std::uint64_t trials_or(const Common& c, std::uint64_t fallback) {
  return c.trials == 0 ? fallback : c.trials;
}

// Every option of the subcommand as given (or defaulted). The output path is
// not part of the experiment and is left out.
json config_of(const CLI::App& sub, const Common& c) {
  auto typed = [](const std::string& text) {
    const json j = json::parse(text, nullptr, false);
    return j.is_number() || j.is_boolean() ? j : json(text);
  };
  json cfg;
  for (const CLI::Option* opt : sub.get_options()) {
    const std::string name = opt->get_lnames().empty() ? opt->get_name() : opt->get_lnames()[0];
    if (name == "help" || name == "out") continue;
    const auto& res = opt->results();
    if (res.size() == 1) {
      cfg[name] = typed(res[0]);
    } else if (!res.empty()) {
      json arr = json::array();
      for (const auto& r : res) arr.push_back(typed(r));
      cfg[name] = arr;
    } else if (!opt->get_default_str().empty()) {
      const std::string d = opt->get_default_str();
      json parsed = json::parse(d, nullptr, false);
      cfg[name] = parsed.is_discarded() ? json(d) : parsed;
    }
  }
  cfg["subcommand"] = sub.get_name();
  cfg["seed"] = c.seed;
  cfg["trials"] = c.trials;
  cfg["workers"] = c.workers;
  cfg["format"] = c.format;
  return cfg;
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw std::runtime_error("cannot open '" + path + "' for writing");
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

void emit(const Common& c, const CLI::App& sub, const std::string& kind, const json& payload,
          const std::string& csv) {
  Output out(c.out);
  const json record = result_record(kind, config_of(sub, c), payload);
  if (c.format == "csv") {
    json header = record;
    header.erase("payload");
    out.stream() << "# " << header.dump() << '\n' << csv;
  } else {
    out.stream() << record.dump(2) << '\n';
  }
}

// ---- gen ----

struct GenArgs {
  std::string domain = "cube";
  std::size_t n = 64;
  double g = 8.0;
  double gamma = 0.1;
  std::size_t count = 100;
};

int cmd_gen(const CLI::App& sub, const Common& c, const GenArgs& a) {
  Output out(c.out);
  json header{{"schema", kResultSchema},
              {"version", version()},
              {"kind", "instances"},
              {"config", config_of(sub, c)}};
  out.stream() << header.dump() << '\n';
  const RandomSource source{c.seed, 0};
  if (a.domain == "cube") {
    CubePromise promise;
    try {
      promise = CubePromise::make(a.n, a.g);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    for (std::size_t i = 0; i < a.count; ++i) {
      const CubePair pair = sample_promise(promise, source.substream(i));
      const std::size_t d = hamming_distance(pair.x, pair.y);
      out.stream() << json{{"x", pair.x}, {"y", pair.y}, {"distance", d},
                           {"label", static_cast<int>(ghd_label(d, promise))}}
                          .dump()
                   << '\n';
    }
  } else {
    SpherePromise promise;
    try {
      promise = SpherePromise::make(a.n, a.gamma);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    for (std::size_t i = 0; i < a.count; ++i) {
      const SpherePair pair = sample_promise(promise, source.substream(i));
      out.stream() << json{{"x", sphere_to_json(pair.x)},
                           {"y", sphere_to_json(pair.y)},
                           {"inner_product", dot(pair.x, pair.y)},
                           {"label", static_cast<int>(ghs_label(pair.x, pair.y, promise))}}
                          .dump()
                   << '\n';
    }
  }
  return kOk;
}

// ---- protocol ----

struct ProtocolArgs {
  std::string builtin = "trivial";
  std::string file;
  std::size_t n = 8;
  double gamma = 0.1;
  std::vector<std::size_t> m{1};
  std::string method = "exhaustive";
  std::string convention = "sign-of-inner-product";
  std::string distribution = "uniform";
  double g = 0.0;
};

int cmd_protocol(const CLI::App& sub, const Common& c, const ProtocolArgs& a) {
  std::vector<ErrorReport> reports;
  const Convention conv = convention_from_string(a.convention);
  std::optional<CubePromise> promise;
  if (a.g > 0.0) promise = CubePromise::make(a.n, a.g);
  if (conv == Convention::promise_only && !promise) {
    throw UsageError("promise_only convention needs --g");
  }
  std::vector<ProtocolSpec> specs;
  if (!a.file.empty()) {
    std::ifstream in(a.file);
    if (!in) throw std::runtime_error("cannot read '" + a.file + "'");
    json j;
    try {
      in >> j;
    } catch (const json::exception& e) {
      throw ProtocolFormatError(std::string("protocol file: ") + e.what());
    }
    specs.push_back(protocol_from_json(j));
  } else if (a.builtin == "sampling") {
    for (std::size_t m : a.m) {
      ProtocolSpec s;
      s.n = a.n;
      if (m % 2 == 0) throw UsageError("sampling needs odd --m");
      s.coin = protocols::sampling_cube(a.n, a.gamma, m);
      specs.push_back(std::move(s));
    }
  } else {
    json j{{"builtin", a.builtin}, {"n", a.n}};
    specs.push_back(protocol_from_json(j));
  }
  for (std::size_t i = 0; i < specs.size(); ++i) {
    const auto& s = specs[i];
    const RandomSource source = RandomSource{c.seed, 1}.substream(i);
    if (a.method == "exhaustive") {
      if (s.table) {
        reports.push_back(evaluate_error_exhaustive(*s.table, s.n, conv, promise));
      } else {
        if (s.coin->rounds() > 0 && s.coin->name.rfind("sampling", 0) == 0) {
          throw UsageError("public-coin protocols need --method monte-carlo");
        }
        reports.push_back(evaluate_error_exhaustive(s.coin->instantiate(source), s.n, conv, promise));
      }
      continue;
    }
    const auto coin = s.table ? PublicCoinProtocol<BitString>::deterministic(s.table->as_cube_protocol(s.n))
                              : *s.coin;
    const PairSampler<BitString> sampler =
        a.distribution == "boundary" ? gap_boundary_cube_pairs(s.n, a.gamma)
                                     : uniform_cube_pairs(s.n, conv, promise);
    reports.push_back(evaluate_error_monte_carlo(coin, sampler, conv, trials_or(c, 100000), source));
  }
  emit(c, sub, "error_reports", json(reports), error_reports_csv(reports));
  return kOk;
}

// ---- roundelim ----

struct RoundElimArgs {
  std::string protocol = "first-bit";
  std::string file;
  std::string geometry = "cube";
  std::size_t n = 8;
  std::size_t k = 2;
  std::size_t c1 = 1;
  double delta = 0.0;
  double net_delta = 0.25;
};

TableProtocol roundelim_protocol(const RoundElimArgs& a, const Common& c) {
  if (!a.file.empty()) {
    std::ifstream in(a.file);
    if (!in) throw std::runtime_error("cannot read '" + a.file + "'");
    json j;
    try {
      in >> j;
    } catch (const json::exception& e) {
      throw ProtocolFormatError(std::string("protocol file: ") + e.what());
    }
    auto spec = protocol_from_json(j);
    if (!spec.table) throw UsageError("round elimination needs a table protocol");
    return *spec.table;
  }
  if (a.protocol == "first-bit") return protocols::first_bit_then_trivial(a.n);
  if (a.protocol == "trivial-then-silent") return protocols::trivial_then_silent(a.n, a.k);
  if (a.protocol == "prefix") return protocols::prefix_revealing(a.n, a.k, a.c1);
  if (a.protocol == "random") {
    std::vector<RoundSpec> schedule;
    for (std::size_t r = 0; r < a.k; ++r) {
      schedule.push_back({r % 2 == 0 ? Party::alice : Party::bob, a.c1});
    }
    Rng rng = RandomSource{c.seed, 2}.rng();
    return protocols::random_table(a.n, schedule, rng);
  }
  throw UsageError("unknown protocol '" + a.protocol + "'");
}

bool mechanics_hold(const EliminationReport& r) {
  return r.markov_ok && r.pigeonhole_ok && r.union_violations == 0 && r.rounds_out + 1 == r.rounds_in;
}

int cmd_roundelim(const CLI::App& sub, const Common& c, const RoundElimArgs& a) {
  if (a.geometry == "sphere") {
    const DeltaNet net = DeltaNet::build(a.n, a.net_delta, RandomSource{c.seed, 3});
    const TableProtocol p = tabulate_on_net(protocols::sign_pattern_sphere(a.n), net);
    auto params = RoundElimParams::for_sphere(a.n, std::max<std::size_t>(a.k, 1), p.rounds(),
                                              p.schedule()[0].bits);
    if (a.delta > 0.0) params.delta = a.delta;
    const auto e = eliminate_round_sphere(
        p, net, params, {trials_or(c, 200000), RandomSource{c.seed, 4}, Exec::parallel});
    json payload = e.report;
    payload["net_size"] = net.size();
    payload["net_certified"] = net.certified();
    std::ostringstream csv;
    csv << "eps_in,eps_out,bad1,bad2,bad3,bound_rhs\n"
        << e.report.eps_in << ',' << e.report.eps_out << ',' << e.report.bad1 << ','
        << e.report.bad2 << ',' << e.report.bad3 << ',' << e.report.bound_rhs << '\n';
    emit(c, sub, "elimination", payload, csv.str());
    return mechanics_hold(e.report) ? kOk : kCheckFailed;
  }
  const TableProtocol p = roundelim_protocol(a, c);
  std::optional<double> delta;
  if (a.delta > 0.0) delta = a.delta;
  const auto run = full_elimination(p, a.n, std::max(a.k, p.rounds()), Exec::parallel, delta);
  bool ok = run.protocols.back().rounds() == 0;
  for (const auto& r : run.reports) ok = ok && mechanics_hold(r);
  json payload{{"eps0", run.eps0}, {"reports", run.reports}};
  emit(c, sub, "elimination_trajectory", payload, trajectory_csv(run));
  return ok ? kOk : kCheckFailed;
}

// ---- concentration ----

struct ConcentrationArgs {
  std::string check = "sweep";
  std::size_t n = 100;
  double gamma = 0.3;
  double t = 0.5;
  double c = 1.0;
  double alpha = 0.05;
  double d = 0.25;
  double d1 = 0.25;
  std::size_t weight_x = 10;
  std::size_t weight_y = 45;
  double a = 3.0;
  double level = 0.0;
  std::size_t exact_max_n = 1000;
};

int cmd_concentration(const CLI::App& sub, const Common& c, const ConcentrationArgs& a) {
  std::vector<BoundCheck> checks;
  const RandomSource source{c.seed, 5};
  const std::uint64_t trials = trials_or(c, 200000);
  if (a.check == "sweep") {
    checks = default_sweep({trials, source, Exec::parallel, a.exact_max_n});
  } else if (a.check == "cap") {
    checks.push_back(estimate_cap(SphereVector::basis(a.n, 0), a.gamma, trials, source));
  } else if (a.check == "sphere") {
    checks.push_back(sphere_concentration_check(SphereSet::cap(SphereVector::basis(a.n, 0), a.level),
                                                a.t, trials, source));
  } else if (a.check == "hamming-cap") {
    checks.push_back(hamming_cap_check(a.n, a.c));
  } else if (a.check == "hamming") {
    checks.push_back(hamming_concentration_check(HammingSet::weight_ball(a.n, a.n / 2), a.c));
  } else if (a.check == "near-zero") {
    auto r = near_zero_mass_check(a.alpha, a.n, trials, source);
    checks.push_back(r.monte_carlo);
    checks.push_back(r.quadrature);
  } else if (a.check == "sign-flip") {
    checks.push_back(perturbed_sign_flip_check(a.d, a.alpha, a.n, a.d1, trials, source));
  } else if (a.check == "hypergeometric") {
    checks.push_back(hypergeometric_tail_check(a.n, a.weight_y, a.weight_x, a.a));
  }
  bool ok = true;
  for (const auto& ch : checks) ok = ok && ch.verdict;
  emit(c, sub, "bound_checks", json(checks), bound_checks_csv(checks));
  return ok ? kOk : kCheckFailed;
}

// ---- streaming ----

struct StreamingArgs {
  std::string mode = "passes";
  std::string algo = "exact";
  std::size_t n = 1024;
  double g = 64.0;
  std::size_t p = 4;
  std::vector<std::size_t> k_min{2, 8, 32, 128, 512, 2048};
  std::size_t count = 100;
  std::string stream_file;
};

int cmd_streaming(const CLI::App& sub, const Common& c, const StreamingArgs& a) {
  if (a.mode == "f0") {
    if (a.stream_file.empty()) throw UsageError("f0 mode needs --stream-file");
    std::ifstream in(a.stream_file);
    if (!in) throw std::runtime_error("cannot read '" + a.stream_file + "'");
    const Stream s = read_stream_csv(in);
    json payload{{"tokens", s.size()}, {"f0", exact_f0(s)}};
    if (a.algo == "kmv") payload["kmv_estimate"] = kmv_estimate(s, a.k_min.front(), {c.seed, 6});
    std::ostringstream csv;
    csv << "tokens,f0\n" << s.size() << ',' << exact_f0(s) << '\n';
    emit(c, sub, "f0", payload, csv.str());
    return kOk;
  }
  if (a.mode == "accuracy") {
    const auto rep = accuracy_requirement_check(a.n, a.g, a.k_min, trials_or(c, 400), {c.seed, 7});
    emit(c, sub, "accuracy", rep, accuracy_csv(rep));
    return kOk;
  }
  const CubePromise promise = CubePromise::make(a.n, a.g);
  json runs = json::array();
  std::ostringstream csv;
  csv << "p,pair,messages,max_message_bits,estimate,answer,truth,correct\n";
  bool ok = true;
  for (std::size_t p = 1; p <= a.p; ++p) {
    for (std::size_t i = 0; i < a.count; ++i) {
      const CubePair pair = sample_promise(promise, RandomSource{c.seed, 8}.substream(i));
      const int truth = static_cast<int>(ghd_label(pair.x, pair.y, promise));
      std::unique_ptr<StreamingAlgorithm> algo;
      if (a.algo == "kmv") {
        algo = std::make_unique<KmvSketch>(a.k_min.front(), RandomSource{c.seed, 9}.substream(i));
      } else {
        algo = std::make_unique<ExactF0Algorithm>();
      }
      const PassRun run = simulate_passes(pair.x, pair.y, *algo, p);
      const bool correct = run.answer == truth;
      const auto budget = algo->memory_budget_bits();
      const bool shape = run.messages.size() == 2 * p - 1 &&
                         (!budget || run.max_message_bits <= *budget);
      ok = ok && shape && (a.algo == "kmv" || correct);
      json r = run;
      r["truth"] = truth;
      r["correct"] = correct;
      runs.push_back(std::move(r));
      csv << p << ',' << i << ',' << run.messages.size() << ',' << run.max_message_bits << ','
          << run.estimate << ',' << run.answer << ',' << truth << ',' << correct << '\n';
    }
  }
  emit(c, sub, "pass_runs", runs, csv.str());
  return ok ? kOk : kCheckFailed;
}

// ---- reduction ----

struct ReductionArgs {
  std::string mode = "calibrate";
  std::size_t n = 4096;
  double g = 64.0;
  double gamma = 0.1;
  double c0 = kDefaultC0;
  std::vector<double> c0_grid{1, 2, 3, 4, 5, 6, 7, 8, 10, 12};
  std::size_t dimension = 3;
  double target = 0.05;
};

int cmd_reduction(const CLI::App& sub, const Common& c, const ReductionArgs& a) {
  const RandomSource source{c.seed, 10};
  if (a.mode == "embed") {
    // Embedding identity on random pairs.
    double worst = 0.0;
    Rng rng = source.rng();
    const std::uint64_t trials = trials_or(c, 10000);
    for (std::uint64_t i = 0; i < trials; ++i) {
      const BitString x = sample_cube(a.n, rng);
      const BitString y = sample_cube(a.n, rng);
      const double lhs = dot(embed_cube_to_sphere(x), embed_cube_to_sphere(y));
      const double rhs = 1.0 - 2.0 * static_cast<double>(hamming_distance(x, y)) / static_cast<double>(a.n);
      worst = std::max(worst, std::abs(lhs - rhs));
    }
    json payload{{"n", a.n}, {"trials", trials}, {"max_abs_err", worst}};
    std::ostringstream csv;
    csv << "n,trials,max_abs_err\n" << a.n << ',' << trials << ',' << worst << '\n';
    emit(c, sub, "embedding", payload, csv.str());
    return worst <= 1e-12 ? kOk : kCheckFailed;
  }
  if (a.mode == "transfer") {
    const auto rep = gap_transfer_check(a.gamma, a.n, trials_or(c, 1000), source, a.c0, a.dimension);
    std::ostringstream csv;
    csv << "side,inner_product,empirical_rate,closed_form,sigma\n";
    for (const auto* s : {&rep.positive, &rep.negative}) {
      csv << (s == &rep.positive ? "+" : "-") << ',' << s->inner_product << ',' << s->empirical_rate
          << ',' << s->closed_form << ',' << s->sigma << '\n';
    }
    emit(c, sub, "gap_transfer", rep, csv.str());
    return kOk;
  }
  const auto cal = calibrate_c0(a.n, a.g, a.c0_grid, trials_or(c, 2000), source, a.target, a.dimension);
  emit(c, sub, "c0_calibration", cal, calibration_csv(cal));
  return cal.chosen_c0 > 0.0 && cal.monotone ? kOk : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gap-Hamming laboratory"};
  app.require_subcommand(1);
  Common common;
  if (const char* env = std::getenv("GHDLAB_SEED")) {
    try {
      common.seed = std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "GHDLAB_SEED must be an unsigned integer\n";
      return kUsage;
    }
  }
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", common.seed, "Seed (falls back to GHDLAB_SEED)");
    sub->add_option("--trials", common.trials, "Monte Carlo trials (0: command default)");
    sub->add_option("--workers", common.workers, "OpenMP workers (0: all)")->check(CLI::NonNegativeNumber);
    sub->add_option("--out", common.out, "Output file (default stdout)");
    sub->add_option("--format", common.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  };

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Sample labeled promise instances");
  add_common(gen_cmd);
  gen_cmd->add_option("--domain", gen.domain)->check(CLI::IsMember({"cube", "sphere"}))->capture_default_str();
  gen_cmd->add_option("--n", gen.n)->check(CLI::PositiveNumber)->capture_default_str();
  gen_cmd->add_option("--g", gen.g)->capture_default_str();
  gen_cmd->add_option("--gamma", gen.gamma)->capture_default_str();
  gen_cmd->add_option("--count", gen.count)->capture_default_str();

  ProtocolArgs proto;
  auto* proto_cmd = app.add_subcommand("protocol", "Evaluate protocol error");
  add_common(proto_cmd);
  proto_cmd->add_option("--builtin", proto.builtin)
      ->check(CLI::IsMember({"trivial", "constant0", "sampling"}))
      ->capture_default_str();
  proto_cmd->add_option("--file", proto.file, "Table protocol JSON");
  proto_cmd->add_option("--n", proto.n)->check(CLI::PositiveNumber)->capture_default_str();
  proto_cmd->add_option("--g", proto.g)->capture_default_str();
  proto_cmd->add_option("--gamma", proto.gamma)->capture_default_str();
  proto_cmd->add_option("--m", proto.m, "Sample counts (comma list)")->delimiter(',')->capture_default_str();
  proto_cmd->add_option("--method", proto.method)
      ->check(CLI::IsMember({"exhaustive", "monte-carlo"}))
      ->capture_default_str();
  proto_cmd->add_option("--convention", proto.convention)
      ->check(CLI::IsMember({"sign-of-inner-product", "promise-only"}))
      ->capture_default_str();
  proto_cmd->add_option("--distribution", proto.distribution)
      ->check(CLI::IsMember({"uniform", "boundary"}))
      ->capture_default_str();

  RoundElimArgs re;
  auto* re_cmd = app.add_subcommand("roundelim", "Eliminate rounds of a protocol");
  add_common(re_cmd);
  re_cmd->add_option("--protocol", re.protocol)
      ->check(CLI::IsMember({"first-bit", "trivial-then-silent", "prefix", "random"}))
      ->capture_default_str();
  re_cmd->add_option("--file", re.file, "Table protocol JSON");
  re_cmd->add_option("--geometry", re.geometry)->check(CLI::IsMember({"cube", "sphere"}))->capture_default_str();
  re_cmd->add_option("--n", re.n)->check(CLI::PositiveNumber)->capture_default_str();
  re_cmd->add_option("--k", re.k)->check(CLI::PositiveNumber)->capture_default_str();
  re_cmd->add_option("--c1", re.c1)->capture_default_str();
  re_cmd->add_option("--delta", re.delta, "Goodness factor (default 1 + 1/k)");
  re_cmd->add_option("--net-delta", re.net_delta)->capture_default_str();

  ConcentrationArgs conc;
  auto* conc_cmd = app.add_subcommand("concentration", "Check concentration bounds");
  add_common(conc_cmd);
  conc_cmd->add_option("--check", conc.check)
      ->check(CLI::IsMember({"sweep", "cap", "sphere", "hamming-cap", "hamming", "near-zero",
                             "sign-flip", "hypergeometric"}))
      ->capture_default_str();
  conc_cmd->add_option("--n", conc.n)->check(CLI::PositiveNumber)->capture_default_str();
  conc_cmd->add_option("--gamma", conc.gamma)->capture_default_str();
  conc_cmd->add_option("--t", conc.t)->capture_default_str();
  conc_cmd->add_option("--c", conc.c)->capture_default_str();
  conc_cmd->add_option("--alpha", conc.alpha)->capture_default_str();
  conc_cmd->add_option("--d", conc.d)->capture_default_str();
  conc_cmd->add_option("--d1", conc.d1)->capture_default_str();
  conc_cmd->add_option("--weight-x", conc.weight_x)->capture_default_str();
  conc_cmd->add_option("--weight-y", conc.weight_y)->capture_default_str();
  conc_cmd->add_option("--a", conc.a)->capture_default_str();
  conc_cmd->add_option("--level", conc.level)->capture_default_str();
  conc_cmd->add_option("--exact-max-n", conc.exact_max_n)->capture_default_str();

  StreamingArgs st;
  auto* st_cmd = app.add_subcommand("streaming", "Streaming-to-communication reduction");
  add_common(st_cmd);
  st_cmd->add_option("--mode", st.mode)->check(CLI::IsMember({"passes", "accuracy", "f0"}))->capture_default_str();
  st_cmd->add_option("--algo", st.algo)->check(CLI::IsMember({"exact", "kmv"}))->capture_default_str();
  st_cmd->add_option("--n", st.n)->check(CLI::PositiveNumber)->capture_default_str();
  st_cmd->add_option("--g", st.g)->capture_default_str();
  st_cmd->add_option("--p", st.p, "Largest pass count")->check(CLI::PositiveNumber)->capture_default_str();
  st_cmd->add_option("--k-min", st.k_min, "Sketch sizes (comma list)")->delimiter(',')->capture_default_str();
  st_cmd->add_option("--count", st.count)->capture_default_str();
  st_cmd->add_option("--stream-file", st.stream_file, "index,bit CSV");

  ReductionArgs red;
  auto* red_cmd = app.add_subcommand("reduction", "Cube/sphere reductions");
  add_common(red_cmd);
  red_cmd->add_option("--mode", red.mode)->check(CLI::IsMember({"embed", "transfer", "calibrate"}))->capture_default_str();
  red_cmd->add_option("--n", red.n)->check(CLI::PositiveNumber)->capture_default_str();
  red_cmd->add_option("--g", red.g)->capture_default_str();
  red_cmd->add_option("--gamma", red.gamma)->capture_default_str();
  red_cmd->add_option("--c0", red.c0)->capture_default_str();
  red_cmd->add_option("--c0-grid", red.c0_grid)->delimiter(',')->capture_default_str();
  red_cmd->add_option("--dimension", red.dimension)->capture_default_str();
  red_cmd->add_option("--target", red.target)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  set_workers(common.workers);
  try {
    if (*gen_cmd) return cmd_gen(*gen_cmd, common, gen);
    if (*proto_cmd) return cmd_protocol(*proto_cmd, common, proto);
    if (*re_cmd) return cmd_roundelim(*re_cmd, common, re);
    if (*conc_cmd) return cmd_concentration(*conc_cmd, common, conc);
    if (*st_cmd) return cmd_streaming(*st_cmd, common, st);
    if (*red_cmd) return cmd_reduction(*red_cmd, common, red);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntime;
  }
  return kUsage;
}
