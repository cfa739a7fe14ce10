#include "ghdlab/serialize.hpp"

#include <boost/archive/iterators/base64_from_binary.hpp>
#include <boost/archive/iterators/binary_from_base64.hpp>
#include <boost/archive/iterators/transform_width.hpp>
#include <bit>
#include <chrono>
#include <ctime>
#include <iomanip>
#include <sstream>

#include "ghdlab/protocols.hpp"

#ifndef GHDLAB_VERSION
#define GHDLAB_VERSION "unknown"
#endif

namespace ghdlab {

const char* version() { return GHDLAB_VERSION; }

std::string base64_encode(const std::vector<std::uint8_t>& bytes) {
  using namespace boost::archive::iterators;
  using It = base64_from_binary<transform_width<std::vector<std::uint8_t>::const_iterator, 6, 8>>;
  std::string out(It(bytes.begin()), It(bytes.end()));
  out.append((3 - bytes.size() % 3) % 3, '=');
  return out;
}

std::vector<std::uint8_t> base64_decode(const std::string& text) {
  using namespace boost::archive::iterators;
  using It = transform_width<binary_from_base64<std::string::const_iterator>, 8, 6>;
  std::string body = text;
  std::size_t pad = 0;
  while (!body.empty() && body.back() == '=') {
    body.pop_back();
    ++pad;
  }
  if (pad > 2 || (body.size() + pad) % 4 != 0) throw ProtocolFormatError("malformed base64");
  body.append(pad, 'A');
  std::vector<std::uint8_t> out;
  try {
    for (It it(body.cbegin()), end(body.cend()); it != end; ++it) out.push_back(static_cast<std::uint8_t>(*it));
  } catch (const std::exception&) {
    throw ProtocolFormatError("malformed base64");
  }
  out.resize(out.size() - pad);
  return out;
}

void to_json(json& j, const BitString& x) { j = json{{"n", x.size()}, {"hex", x.to_hex()}}; }

void from_json(const json& j, BitString& x) {
  x = BitString::from_hex(j.at("n").get<std::size_t>(), j.at("hex").get<std::string>());
}

json sphere_to_json(const SphereVector& x) {
  return json(std::vector<double>(x.coords().begin(), x.coords().end()));
}

SphereVector sphere_from_json(const json& j) {
  return SphereVector::from_coords(j.get<std::vector<double>>());
}

void to_json(json& j, const HyperplaneSketchSeed& s) {
  j = json{{"seed", s.seed}, {"stream", s.stream}, {"n_out", s.n_out}};
}

void from_json(const json& j, HyperplaneSketchSeed& s) {
  s.seed = j.at("seed").get<std::uint64_t>();
  s.stream = j.at("stream").get<std::uint64_t>();
  s.n_out = j.at("n_out").get<std::size_t>();
}

void to_json(json& j, const Rational& r) { j = json{{"num", r.num}, {"den", r.den}}; }

void to_json(json& j, const ErrorReport& r) {
  j = json{{"protocol", r.protocol},
           {"error_probability", r.error_probability},
           {"convention", to_string(r.convention)},
           {"method", to_string(r.method)},
           {"counted", r.counted},
           {"errors", r.errors},
           {"half_width", r.half_width},
           {"max_cost", r.max_cost},
           {"rounds", r.rounds}};
  if (r.exact) j["exact"] = *r.exact;
  if (!r.note.empty()) j["note"] = r.note;
}

void to_json(json& j, const EliminationReport& r) {
  j = json{{"geometry", to_string(r.geometry)},
           {"method", to_string(r.method)},
           {"protocol", r.protocol},
           {"n", r.n},
           {"k", r.k},
           {"kappa", r.kappa},
           {"c1", r.c1},
           {"d1", std::isfinite(r.d1) ? json(r.d1) : json("inf")},
           {"snap_radius", std::isfinite(r.snap_radius) ? json(r.snap_radius) : json("inf")},
           {"delta", r.delta},
           {"snapped_party", to_string(r.snapped_party)},
           {"chosen_message", r.chosen_message},
           {"measure_good", r.measure_good},
           {"measure_A", r.measure_A},
           {"markov_floor", r.markov_floor},
           {"pigeonhole_floor", r.pigeonhole_floor},
           {"good_count", r.good_count},
           {"class_size", r.class_size},
           {"eps_in", r.eps_in},
           {"eps_out", r.eps_out},
           {"bad1", r.bad1},
           {"bad2", r.bad2},
           {"bad3", r.bad3},
           {"bound_rhs", r.bound_rhs},
           {"eps_in_half_width", r.eps_in_half_width},
           {"eps_out_half_width", r.eps_out_half_width},
           {"bad_half_width", r.bad_half_width},
           {"rounds_in", r.rounds_in},
           {"rounds_out", r.rounds_out},
           {"markov_ok", r.markov_ok},
           {"pigeonhole_ok", r.pigeonhole_ok},
           {"union_violations", r.union_violations},
           {"hypothesis_holds", r.hypothesis_holds},
           {"bound_holds", r.bound_holds}};
  if (r.eps_in_exact) j["eps_in_exact"] = *r.eps_in_exact;
  if (r.eps_out_exact) j["eps_out_exact"] = *r.eps_out_exact;
  if (!r.note.empty()) j["note"] = r.note;
}

void to_json(json& j, const BoundCheck& c) {
  json params = json::object();
  for (const auto& [k, v] : c.params) params[k] = v;
  j = json{{"name", c.name},
           {"params", params},
           {"analytic_bound", c.analytic_bound},
           {"estimate", c.estimate},
           {"half_width", c.half_width},
           {"trials", c.trials},
           {"exact", c.exact},
           {"violations", c.violations},
           {"verdict", c.verdict}};
}

namespace {

json side_json(const GapTransferSide& s) {
  return json{{"inner_product", s.inner_product},
              {"empirical_rate", s.empirical_rate},
              {"closed_form", s.closed_form},
              {"abs_err", s.abs_err},
              {"sigma", s.sigma},
              {"mean_offset", s.mean_offset},
              {"sd_offset", s.sd_offset},
              {"correct_side", s.correct_side},
              {"correct_side_half_width", s.correct_side_half_width},
              {"trials", s.trials}};
}

}  // namespace

void to_json(json& j, const GapTransferReport& r) {
  j = json{{"gamma", r.gamma},
           {"n_out", r.n_out},
           {"dimension", r.dimension},
           {"c0", r.c0},
           {"cube_gap", r.cube_gap},
           {"positive", side_json(r.positive)},
           {"negative", side_json(r.negative)},
           {"failure_rate", r.failure_rate},
           {"failure_half_width", r.failure_half_width},
           {"taylor_residual", r.taylor_residual},
           {"linearized_bias", r.linearized_bias},
           {"linearized_bias_taylor", r.linearized_bias_taylor}};
}

void to_json(json& j, const C0Calibration& c) {
  json rows = json::array();
  for (const auto& r : c.rows) {
    rows.push_back({{"c0", r.c0},
                    {"gamma", r.gamma},
                    {"failure_rate", r.failure_rate},
                    {"failure_half_width", r.failure_half_width},
                    {"lifted_error", r.lifted_error},
                    {"lifted_half_width", r.lifted_half_width}});
  }
  j = json{{"n", c.n}, {"g", c.g},           {"target", c.target},
           {"rows", rows}, {"chosen_c0", c.chosen_c0}, {"monotone", c.monotone}};
}

void to_json(json& j, const PassRun& r) {
  json sizes = json::array();
  json from = json::array();
  for (const auto& m : r.messages) {
    sizes.push_back(m.bits);
    from.push_back(to_string(m.from));
  }
  j = json{{"n", r.n},
           {"p", r.passes},
           {"messages", r.messages.size()},
           {"sizes", sizes},
           {"senders", from},
           {"max_message_bits", r.max_message_bits},
           {"estimate", r.estimate},
           {"answer", r.answer}};
}

void to_json(json& j, const AccuracyReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"k_min", row.k_min},
                    {"budget_bits", row.budget_bits},
                    {"error", row.error},
                    {"half_width", row.half_width}});
  }
  j = json{{"n", r.n},
           {"g", r.g},
           {"trials", r.trials},
           {"rows", rows},
           {"chosen_k_min", r.chosen_k_min},
           {"monotone", r.monotone},
           {"predicted_scale", r.predicted_scale}};
}

json table_protocol_to_json(const TableProtocol& p) {
  json rounds = json::array();
  for (std::size_t r = 0; r < p.rounds(); ++r) {
    const auto& t = p.message_table(r);
    std::vector<std::uint8_t> bytes(t.size() * 4);
    for (std::size_t i = 0; i < t.size(); ++i) {
      for (int b = 0; b < 4; ++b) bytes[4 * i + b] = static_cast<std::uint8_t>(t[i] >> (8 * b));
    }
    rounds.push_back({{"speaker", to_string(p.schedule()[r].speaker)},
                      {"bits", p.schedule()[r].bits},
                      {"table", base64_encode(bytes)}});
  }
  return json{{"name", p.name()},
              {"domain_size", p.domain_size()},
              {"output_party", to_string(p.output_party())},
              {"rounds", rounds},
              {"output", base64_encode(p.output_table())}};
}

TableProtocol table_protocol_from_json(const json& j) {
  try {
    std::vector<RoundSpec> schedule;
    std::vector<std::vector<std::uint32_t>> tables;
    for (const auto& r : j.at("rounds")) {
      schedule.push_back({party_from_string(r.at("speaker").get<std::string>()),
                          r.at("bits").get<std::size_t>()});
      const auto bytes = base64_decode(r.at("table").get<std::string>());
      if (bytes.size() % 4 != 0) throw ProtocolFormatError("message table is not a uint32 array");
      std::vector<std::uint32_t> t(bytes.size() / 4);
      for (std::size_t i = 0; i < t.size(); ++i) {
        for (int b = 0; b < 4; ++b) t[i] |= static_cast<std::uint32_t>(bytes[4 * i + b]) << (8 * b);
      }
      tables.push_back(std::move(t));
    }
    return TableProtocol(j.value("name", std::string("table")), j.at("domain_size").get<std::uint64_t>(),
                         std::move(schedule), std::move(tables),
                         base64_decode(j.at("output").get<std::string>()),
                         party_from_string(j.at("output_party").get<std::string>()));
  } catch (const json::exception& e) {
    throw ProtocolFormatError(std::string("protocol file: ") + e.what());
  } catch (const MalformedProtocol& e) {
    throw ProtocolFormatError(std::string("protocol file: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ProtocolFormatError(std::string("protocol file: ") + e.what());
  }
}

ProtocolSpec protocol_from_json(const json& j) {
  ProtocolSpec spec;
  if (!j.is_object()) throw ProtocolFormatError("protocol file must hold a JSON object");
  if (j.contains("builtin")) {
    const auto name = j.at("builtin").get<std::string>();
    if (!j.contains("n")) throw ProtocolFormatError("builtin protocols need \"n\"");
    spec.n = j.at("n").get<std::size_t>();
    if (spec.n == 0) throw ProtocolFormatError("n must be positive");
    if (name == "trivial") {
      spec.coin = PublicCoinProtocol<BitString>::deterministic(protocols::trivial_cube(spec.n));
    } else if (name == "constant0") {
      spec.coin = PublicCoinProtocol<BitString>::deterministic(protocols::constant<BitString>(0));
    } else if (name == "sampling") {
      spec.coin = protocols::sampling_cube(spec.n, j.value("gamma", 0.0), j.value("m", std::size_t{1}));
    } else {
      throw ProtocolFormatError("unknown builtin '" + name + "'");
    }
    return spec;
  }
  spec.table = table_protocol_from_json(j);
  const std::uint64_t d = spec.table->domain_size();
  if (!std::has_single_bit(d)) throw ProtocolFormatError("table domain must be 2^n");
  spec.n = static_cast<std::size_t>(std::countr_zero(d));
  return spec;
}

json result_record(const std::string& kind, const json& config, const json& payload) {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream ts;
  ts << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return json{{"schema", kResultSchema},
              {"version", version()},
              {"timestamp", ts.str()},
              {"kind", kind},
              {"config", config},
              {"payload", payload}};
}

namespace {

std::ostringstream csv_stream() {
  std::ostringstream os;
  os.precision(17);
  return os;
}

}  // namespace

std::string error_reports_csv(const std::vector<ErrorReport>& reports) {
  auto os = csv_stream();
  os << "protocol,error_probability,half_width,convention,method,counted,errors,max_cost,rounds\n";
  for (const auto& r : reports) {
    os << '"' << r.protocol << "\"," << r.error_probability << ',' << r.half_width << ','
       << to_string(r.convention) << ',' << to_string(r.method) << ',' << r.counted << ','
       << r.errors << ',' << r.max_cost << ',' << r.rounds << '\n';
  }
  return os.str();
}

std::string bound_checks_csv(const std::vector<BoundCheck>& checks) {
  auto os = csv_stream();
  os << "name,params,analytic_bound,estimate,half_width,trials,exact,violations,verdict\n";
  for (const auto& c : checks) {
    os << c.name << ",\"";
    for (std::size_t i = 0; i < c.params.size(); ++i) {
      os << (i ? ";" : "") << c.params[i].first << '=' << c.params[i].second;
    }
    os << "\"," << c.analytic_bound << ',' << c.estimate << ',' << c.half_width << ',' << c.trials
       << ',' << c.exact << ',' << c.violations << ',' << c.verdict << '\n';
  }
  return os.str();
}

std::string calibration_csv(const C0Calibration& c) {
  auto os = csv_stream();
  os << "c0,gamma,failure_rate,failure_half_width,lifted_error,lifted_half_width\n";
  for (const auto& r : c.rows) {
    os << r.c0 << ',' << r.gamma << ',' << r.failure_rate << ',' << r.failure_half_width << ','
       << r.lifted_error << ',' << r.lifted_half_width << '\n';
  }
  return os.str();
}

std::string accuracy_csv(const AccuracyReport& r) {
  auto os = csv_stream();
  os << "k_min,budget_bits,error,half_width\n";
  for (const auto& row : r.rows) {
    os << row.k_min << ',' << row.budget_bits << ',' << row.error << ',' << row.half_width << '\n';
  }
  return os.str();
}

}  // namespace ghdlab
