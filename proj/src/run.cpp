#include "mbkdv/run.hpp"

#include "mbkdv/bilinear.hpp"
#include "mbkdv/checkpoint.hpp"
#include "mbkdv/diophantine.hpp"
#include "mbkdv/errors.hpp"
#include "mbkdv/picard.hpp"
#include "mbkdv/resonance.hpp"
#include "mbkdv/spectral.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <iomanip>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

namespace mbkdv {

using nlohmann::json;

namespace {

const std::map<std::string, std::vector<std::string>>& param_table() {
  static const std::map<std::string, std::vector<std::string>> table{
      {"roots", {"alpha"}},
      {"diophantine", {"alpha", "root", "n_max", "terms"}},
      {"resonance-scan", {"alpha", "n_min", "n_max"}},
      {"simulate", {"alpha", "n", "lambda", "dt", "t", "scheme", "init", "amplitude", "monitor_stride", "checkpoint"}},
      {"picard", {"alpha", "s", "t", "n_min", "n_max", "mode"}},
      {"bilinear-scan", {"alpha", "b", "s_min", "s_max", "s_step", "n_min", "n_max"}},
      {"omega-count", {"alpha", "lambda", "xi", "m_max", "c"}},
  };
  return table;
}

[[noreturn]] void bad(const std::string& key, const std::string& why) {
  throw Error(ErrorCode::ConfigInvalid, "params." + key + ": " + why);
}

/// Typed, range-checked access to the params object.
class Params {
 public:
  explicit Params(const json& j) : j_(j) {}

  bool has(const std::string& key) const { return j_.contains(key); }

  std::string text(const std::string& key, const std::string& fallback) const {
    if (!has(key)) return fallback;
    const json& v = j_.at(key);
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number()) return v.dump();
    bad(key, "expected a string or number");
  }

  double number(const std::string& key, double fallback, double lo, double hi) const {
    double x = fallback;
    if (has(key)) {
      const json& v = j_.at(key);
      if (v.is_number()) {
        x = v.get<double>();
      } else if (v.is_string()) {
        try {
          std::size_t used = 0;
          const auto s = v.get<std::string>();
          x = std::stod(s, &used);
          if (used != s.size()) bad(key, "not a number: '" + s + "'");
        } catch (const std::logic_error&) {
          bad(key, "not a number: '" + v.get<std::string>() + "'");
        }
      } else {
        bad(key, "expected a number");
      }
    }
    if (!(x >= lo && x <= hi)) bad(key, "must lie in [" + format_number(lo) + ", " + format_number(hi) + "]");
    return x;
  }

  std::int64_t integer(const std::string& key, std::int64_t fallback, std::int64_t lo, std::int64_t hi) const {
    const double x = number(key, double(fallback), double(lo), double(hi));
    if (x != std::floor(x)) bad(key, "must be an integer");
    return static_cast<std::int64_t>(x);
  }

  std::string choice(const std::string& key, const std::string& fallback, const std::vector<std::string>& options) const {
    const std::string v = text(key, fallback);
    for (const auto& o : options)
      if (v == o) return v;
    std::string all;
    for (const auto& o : options) all += (all.empty() ? "" : "|") + o;
    bad(key, "expected one of " + all);
  }

  Rational rational(const std::string& key, const std::string& fallback) const {
    const std::string v = text(key, fallback);
    try {
      return parse_rational(v);
    } catch (const Error&) {
      bad(key, "expected an integer or p/q, got '" + v + "'");
    }
  }

  Parameter alpha(std::vector<std::string>& notices) const {
    if (!has("alpha")) bad("alpha", "required");
    const json& v = j_.at("alpha");
    Parameter a;
    try {
      a = Parameter::parse(v.is_string() ? v.get<std::string>() : v.dump());
    } catch (const Error&) {
      bad("alpha", "not a number");
    }
    const Real r = a.real();
    if (r == 0) throw Error(ErrorCode::AlphaZero, "params.alpha: must be nonzero");
    if (r < 0 || r > 4) throw Error(ErrorCode::AlphaOutOfRange, "params.alpha: must lie in (0, 4], got " + a.to_string());
    if (!a.is_exact()) notices.push_back("alpha given as a decimal; using the floating-point path");
    return a;
  }

 private:
  const json& j_;
};

std::string num(double x) { return format_number(x); }
std::string num(std::int64_t x) { return std::to_string(x); }

std::string alpha_text(const Parameter& a) { return a.is_exact() ? a.to_string() : format_number(a.to_double()); }

std::string root_text(const RootValue& r) { return r.to_string(); }

json root_json(const RootValue& r) {
  return {{"value", root_text(r)}, {"approx", r.to_double()}, {"rational", r.is_rational().value_or(false)}};
}

// ---- command parsers: everything is validated here before any work runs ----

struct RootsArgs {
  Parameter alpha;
};

struct DiophantineArgs {
  Parameter alpha;
  std::string root;
  std::int64_t n_max;
  std::int64_t terms;
};

struct ScanArgs {
  Parameter alpha;
  std::int64_t n_min, n_max;
};

struct SimulateArgs {
  Parameter alpha;
  std::size_t n;
  Rational lambda;
  double dt, t, amplitude;
  Scheme scheme;
  std::string init;
  std::size_t monitor_stride;
  std::string checkpoint;
};

struct PicardArgs {
  Parameter alpha;
  double s, t;
  std::int64_t n_min, n_max;
  std::string mode;
};

struct BilinearArgs {
  Parameter alpha;
  double b, s_min, s_max, s_step;
  std::int64_t n_min, n_max;
};

struct OmegaArgs {
  Parameter alpha;
  Rational lambda, xi;
  double m_max, c;
};

using Args = std::variant<RootsArgs, DiophantineArgs, ScanArgs, SimulateArgs, PicardArgs, BilinearArgs, OmegaArgs>;

Args parse_args(const RunConfig& cfg, std::vector<std::string>& notices) {
  const auto& allowed = command_params(cfg.command);
  if (!cfg.params.is_object()) throw Error(ErrorCode::ConfigInvalid, "params: expected an object");
  for (const auto& [key, value] : cfg.params.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      bad(key, "unknown for command '" + cfg.command + "'");
  }
  const Params p(cfg.params);
  const std::string& c = cfg.command;
  if (c == "roots") return RootsArgs{p.alpha(notices)};
  if (c == "diophantine") {
    DiophantineArgs a{p.alpha(notices), p.choice("root", "c1", {"c1", "c2", "d1", "d2"}),
                      p.integer("n_max", 10000, 10, 10000000), p.integer("terms", 32, 1, 512)};
    if ((a.root == "d1" || a.root == "d2") && a.alpha.real() == 1)
      throw Error(ErrorCode::AlphaDegenerate, "params.root: d-roots are undefined at alpha = 1");
    return a;
  }
  if (c == "resonance-scan") {
    ScanArgs a{p.alpha(notices), p.integer("n_min", 1, 1, 100000000), p.integer("n_max", 1000, 1, 100000000)};
    if (a.n_max < a.n_min) bad("n_max", "must be at least n_min");
    if (a.n_max - a.n_min > 1000000) bad("n_max", "scan span limited to 10^6 values");
    return a;
  }
  if (c == "simulate") {
    SimulateArgs a;
    a.alpha = p.alpha(notices);
    a.n = static_cast<std::size_t>(p.integer("n", 256, 8, 16384));
    if (a.n % 2 != 0) bad("n", "must be even");
    a.lambda = p.rational("lambda", "1");
    if (!(a.lambda > 0)) bad("lambda", "must be positive");
    a.dt = p.number("dt", 1e-4, 1e-8, 0.1);
    a.t = p.number("t", 1.0, 1e-8, 1000.0);
    if (a.t / a.dt > 1e8) bad("dt", "more than 10^8 steps requested");
    a.scheme = p.choice("scheme", "ifrk4", {"ifrk4", "etdrk4"}) == "ifrk4" ? Scheme::IFRK4 : Scheme::ETDRK4;
    a.init = p.choice("init", "cosine", {"cosine", "random"});
    a.amplitude = p.number("amplitude", 0.5, 0.0, 10.0);
    a.monitor_stride = static_cast<std::size_t>(p.integer("monitor_stride", 100, 1, 100000000));
    a.checkpoint = p.text("checkpoint", "");
    return a;
  }
  if (c == "picard") {
    PicardArgs a{p.alpha(notices),
                 p.number("s", 0.0, -2.0, 4.0),
                 p.number("t", 0.01, 0.0, 0.1),
                 p.integer("n_min", 6, 1, 4000000000000000000),
                 p.integer("n_max", 96, 1, 4000000000000000000),
                 p.choice("mode", "auto", {"auto", "rational", "nearest"})};
    if (a.n_max < a.n_min) bad("n_max", "must be at least n_min");
    return a;
  }
  if (c == "bilinear-scan") {
    BilinearArgs a{p.alpha(notices),
                   p.number("b", 0.5, 0.0, 1.0),
                   p.number("s_min", 0.0, -2.0, 4.0),
                   p.number("s_max", 1.0, -2.0, 4.0),
                   p.number("s_step", 0.05, 1e-4, 6.0),
                   p.integer("n_min", 10, 1, 1000000000000),
                   p.integer("n_max", 1000000, 1, 1000000000000)};
    if (a.s_max < a.s_min) bad("s_max", "must be at least s_min");
    if (a.n_max < a.n_min) bad("n_max", "must be at least n_min");
    return a;
  }
  if (c == "omega-count") {
    OmegaArgs a{p.alpha(notices), p.rational("lambda", "1"), p.rational("xi", "16"),
                p.number("m_max", 1048576.0, 1.0, 1073741824.0), p.number("c", 1.0, 0.0, 100.0)};
    if (!(a.lambda > 0)) bad("lambda", "must be positive");
    return a;
  }
  throw Error(ErrorCode::ConfigInvalid, "command: unknown '" + c + "'");
}

// ---- command bodies ----

void run_roots(const RootsArgs& a, Report& rep) {
  const auto r = resonance_roots(a.alpha);
  rep.summary["alpha"] = alpha_text(a.alpha);
  rep.summary["c1"] = root_text(r.c1);
  rep.summary["c2"] = root_text(r.c2);
  rep.summary["rational"] = r.c1.is_rational().value_or(false);
  rep.summary["cutoff_l_alpha"] = r.cutoff_l_alpha;
  Table t{{"root", "approx", "exact"}, {}, {}};
  t.add_row({"1", num(r.c1.to_double()), root_text(r.c1)});
  t.add_row({"2", num(r.c2.to_double()), root_text(r.c2)});
  rep.summary["roots"] = json::object({{"c1", root_json(r.c1)}, {"c2", root_json(r.c2)}});
  if (r.d1) {
    rep.summary["d1"] = root_text(*r.d1);
    rep.summary["d2"] = root_text(*r.d2);
    rep.summary["roots"]["d1"] = root_json(*r.d1);
    rep.summary["roots"]["d2"] = root_json(*r.d2);
    t.add_row({"3", num(r.d1->to_double()), root_text(*r.d1)});
    t.add_row({"4", num(r.d2->to_double()), root_text(*r.d2)});
  }
  t.plot = {{"root", false}, {"approx", false}};
  rep.tables["roots"] = std::move(t);
}

std::string class_name(TypeClass c) {
  switch (c) {
    case TypeClass::Rational: return "Rational";
    case TypeClass::QuadraticSurd: return "QuadraticSurd";
    case TypeClass::Empirical: return "Empirical";
  }
  return "unknown";
}

void run_diophantine(const DiophantineArgs& a, Report& rep) {
  RootValue x = a.root == "c1"   ? c_roots(a.alpha).first
                : a.root == "c2" ? c_roots(a.alpha).second
                : a.root == "d1" ? d_roots(a.alpha).first
                                 : d_roots(a.alpha).second;
  const auto cf = cf_expand(x, static_cast<std::size_t>(a.terms));
  const auto est = estimate_type_index(x, a.n_max);
  json terms = json::array();
  for (std::size_t k = 0; k < cf.terms.size(); ++k) terms.push_back(cf.terms[k].str());
  rep.summary["alpha"] = alpha_text(a.alpha);
  rep.summary["root"] = a.root;
  rep.summary["value"] = root_text(x);
  rep.summary["cf_terms"] = terms;
  if (cf.period) rep.summary["cf_period"] = {{"preperiod", cf.period->preperiod_len}, {"period", cf.period->period_len}};
  rep.summary["classification"] = class_name(est.classification);
  rep.summary["nu_hat"] = est.infinite() ? json("inf") : json(est.nu_hat);
  rep.summary["k_hat"] = est.k_hat;
  rep.summary["max_partial_quotient"] = est.max_partial_quotient.str();
  if (!est.infinite()) {
    const auto check = verify_type_bound(x, est.k_hat, est.nu_hat, a.n_max);
    rep.summary["type_bound_holds"] = check.holds;
  }
  Table t{{"N", "theta", "N_abs_theta"}, {}, {{"N", true}, {"N_abs_theta", false}}};
  if (!x.is_rational().value_or(false)) {
    for (const auto& w : theta_subsequence(x, a.n_max)) {
      const double th = static_cast<double>(w.theta);
      t.add_row({num(w.n), num(th), num(double(w.n) * std::abs(th))});
    }
  }
  rep.summary["theta_witnesses"] = t.rows.size();
  rep.tables["theta"] = std::move(t);
}

void run_scan(const ScanArgs& a, Report& rep) {
  Table t{{"N", "nearest_c1N", "theta", "gap", "gap_expansion"}, {}, {{"N", false}, {"gap", false}}};
  double min_gap = INFINITY;
  std::int64_t argmin = 0;
  for (std::int64_t n = a.n_min; n <= a.n_max; ++n) {
    const auto rec = resonance_gap_integer(a.alpha, n);
    const double gap = static_cast<double>(rec.gap);
    if (gap < min_gap) {
      min_gap = gap;
      argmin = n;
    }
    t.add_row({num(n), num(rec.nearest_c1n), num(static_cast<double>(rec.theta)), num(gap),
               num(static_cast<double>(gap_expansion(a.alpha, rec)))});
  }
  rep.summary["alpha"] = alpha_text(a.alpha);
  rep.summary["min_gap"] = min_gap;
  rep.summary["argmin_N"] = argmin;
  rep.tables["gap"] = std::move(t);
}

void run_simulate(const SimulateArgs& a, std::uint64_t seed, Report& rep) {
  const TorusGrid grid(a.lambda, a.n);
  const double lam = grid.lambda(), amp = a.amplitude;
  FieldPair state;
  if (a.init == "cosine") {
    state = sample(
        grid, [&](double x) { return amp * (std::cos(x / lam) + 0.1); },
        [&](double x) { return amp * (std::sin(x / lam) + 0.5 * std::cos(2.0 * x / lam)); });
  } else {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
    std::vector<double> cu, pu, cv, pv;
    for (int k = 1; k <= 4; ++k) {
      cu.push_back(amp * gauss(rng) / k);
      pu.push_back(phase(rng));
      cv.push_back(amp * gauss(rng) / k);
      pv.push_back(phase(rng));
    }
    auto field = [lam](const std::vector<double>& c, const std::vector<double>& ph) {
      return [=](double x) {
        double sum = 0.0;
        for (std::size_t k = 0; k < c.size(); ++k) sum += c[k] * std::cos(double(k + 1) * x / lam + ph[k]);
        return sum;
      };
    };
    state = sample(grid, field(cu, pu), field(cv, pv));
  }
  SimConfig cfg;
  cfg.alpha = a.alpha.to_double();
  cfg.dt = a.dt;
  cfg.t_final = a.t;
  cfg.scheme = a.scheme;
  cfg.monitor_stride = a.monitor_stride;
  const auto res = evolve(grid, state, cfg);

  Table mon{{"t", "E1", "E2", "E3", "E4"}, {}, {}};
  Table drift{{"t", "dE1", "dE2", "dE3", "dE4"}, {}, {}};
  const ConservedSet e0 = res.monitor.front().e;
  for (const auto& m : res.monitor) {
    mon.add_row({num(m.t), num(m.e.e1), num(m.e.e2), num(m.e.e3), num(m.e.e4)});
    drift.add_row({num(m.t), num(std::abs(m.e.e1 - e0.e1)), num(std::abs(m.e.e2 - e0.e2)),
                   num(std::abs(m.e.e3 - e0.e3) / std::abs(e0.e3)), num(std::abs(m.e.e4 - e0.e4) / std::abs(e0.e4))});
  }
  rep.tables["monitor"] = std::move(mon);
  rep.tables["drift"] = std::move(drift);
  rep.summary["alpha"] = alpha_text(a.alpha);
  rep.summary["steps"] = res.steps;
  rep.summary["p"] = res.p;
  rep.summary["q"] = res.q;
  rep.summary["max_drift"] = {{"E1", res.max_drift.e1}, {"E2", res.max_drift.e2}, {"E3", res.max_drift.e3},
                              {"E4", res.max_drift.e4}};
  rep.summary["cfl_number"] = res.cfl_number;
  rep.summary["cfl_warning"] = res.cfl_warning;
  rep.summary["hermitian_defect"] = hermitian_defect(grid, res.state);
  if (!a.checkpoint.empty()) {
    save_checkpoint(a.checkpoint, Checkpoint{grid, res.state, cfg.alpha, res.p, res.q});
    rep.summary["checkpoint"] = a.checkpoint;
  }
}

void run_picard(const PicardArgs& a, Report& rep) {
  PicardMode mode;
  if (a.mode == "auto")
    mode = c_roots(a.alpha).first.is_rational().value_or(false) ? PicardMode::RationalCase : PicardMode::NearestInteger;
  else
    mode = a.mode == "rational" ? PicardMode::RationalCase : PicardMode::NearestInteger;
  const auto ns = picard_frequencies(a.alpha, a.n_min, a.n_max);
  const auto pr = picard_report(a.alpha, a.s, a.t, ns, mode);
  rep.summary = to_json(pr);
  Table t{{"N", "theta", "gap", "phi2_norm", "psi3_norm"}, {}, {{"N", true}, {"phi2_norm", true}}};
  for (const auto& e : pr.entries)
    t.add_row({num(e.n), num(e.theta), num(e.gap), num(e.phi2_norm), num(e.psi3_norm)});
  rep.tables["picard"] = std::move(t);
}

void run_bilinear(const BilinearArgs& a, Report& rep) {
  std::vector<double> s_grid;
  for (int k = 0;; ++k) {
    const double s = std::round((a.s_min + k * a.s_step) * 1e12) / 1e12;
    if (s > a.s_max + 1e-12) break;
    s_grid.push_back(s);
  }
  const auto ns = picard_frequencies(a.alpha, a.n_min, a.n_max);
  const auto scan = threshold_scan(a.alpha, a.b, s_grid, ns);
  Table slopes{{"s", "slope", "slope_half_width"}, {}, {}};
  for (std::size_t i = 0; i < s_grid.size(); ++i)
    slopes.add_row({num(s_grid[i]), num(scan.slopes[i].slope), num(scan.slopes[i].slope_half_width)});
  Table ratios{{"case_id", "alpha", "s", "b", "N", "ratio"}, {}, {{"N", true}, {"ratio", true}}};
  for (double s : s_grid) {
    for (std::int64_t n : ns) {
      const double r = spike_ratio(a.alpha, WeightSpec::vv(s, a.b), family_c2_nearest_pair(a.alpha, n));
      ratios.add_row({to_string(SpikeCase::C2_NearestPair), alpha_text(a.alpha), num(s), num(a.b), num(n), num(r)});
    }
  }
  rep.tables["slopes"] = std::move(slopes);
  rep.tables["ratios"] = std::move(ratios);
  rep.summary["alpha"] = alpha_text(a.alpha);
  rep.summary["b"] = a.b;
  rep.summary["frequencies"] = scan.n_list;
  if (scan.s_star) rep.summary["s_star"] = *scan.s_star;
  if (scan.s_star_lower) rep.summary["s_star_at_least"] = *scan.s_star_lower;
  if (scan.s_star_upper) rep.summary["s_star_at_most"] = *scan.s_star_upper;
}

void run_omega(const OmegaArgs& a, Report& rep) {
  Table t{{"xi", "M", "measure", "bound"}, {}, {{"M", true}, {"measure", true}, {"bound", true}}};
  double worst = 0.0;
  for (double m = 1.0; m <= a.m_max; m *= 2.0) {
    const auto oc = omega_count(a.alpha, a.lambda, a.xi, m, a.c);
    worst = std::max(worst, oc.measure / oc.bound);
    t.add_row({to_string(a.xi), num(m), num(oc.measure), num(oc.bound)});
  }
  rep.tables["omega"] = std::move(t);
  rep.summary["alpha"] = alpha_text(a.alpha);
  rep.summary["lambda"] = to_string(a.lambda);
  rep.summary["xi"] = to_string(a.xi);
  rep.summary["fitted_constant"] = worst;
}

std::string utc_now() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

}  // namespace

RunConfig RunConfig::from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::ConfigInvalid, "config: expected a JSON object");
  RunConfig c;
  for (const auto& [key, value] : j.items()) {
    if (key == "command") {
      if (!value.is_string()) throw Error(ErrorCode::ConfigInvalid, "command: expected a string");
      c.command = value.get<std::string>();
    } else if (key == "params") {
      if (!value.is_object()) throw Error(ErrorCode::ConfigInvalid, "params: expected an object");
      c.params = value;
    } else if (key == "output_dir") {
      if (!value.is_string()) throw Error(ErrorCode::ConfigInvalid, "output_dir: expected a string");
      c.output_dir = value.get<std::string>();
    } else if (key == "seed") {
      if (!value.is_number_integer() || value.get<std::int64_t>() < 0) throw Error(ErrorCode::ConfigInvalid, "seed: expected a nonnegative integer");
      c.seed = value.get<std::uint64_t>();
    } else {
      throw Error(ErrorCode::ConfigInvalid, key + ": unknown key");
    }
  }
  if (c.command.empty()) throw Error(ErrorCode::ConfigInvalid, "command: required");
  return c;
}

json RunConfig::to_json() const {
  return {{"command", command}, {"params", params}, {"output_dir", output_dir.string()}, {"seed", seed}};
}

const std::vector<std::string>& known_commands() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [k, _] : param_table()) v.push_back(k);
    return v;
  }();
  return names;
}

const std::vector<std::string>& command_params(const std::string& command) {
  auto it = param_table().find(command);
  if (it == param_table().end()) throw Error(ErrorCode::ConfigInvalid, "command: unknown '" + command + "'");
  return it->second;
}

void validate(const RunConfig& config) {
  std::vector<std::string> notices;
  (void)parse_args(config, notices);
}

Report execute(const RunConfig& config) {
  std::vector<std::string> notices;
  const Args args = parse_args(config, notices);
  Report rep;
  rep.metadata["tool_version"] = kToolVersion;
  rep.metadata["config"] = config.to_json();
  rep.metadata["started"] = utc_now();
  std::visit(
      [&](const auto& a) {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, RootsArgs>) run_roots(a, rep);
        else if constexpr (std::is_same_v<T, DiophantineArgs>) run_diophantine(a, rep);
        else if constexpr (std::is_same_v<T, ScanArgs>) run_scan(a, rep);
        else if constexpr (std::is_same_v<T, SimulateArgs>) run_simulate(a, config.seed, rep);
        else if constexpr (std::is_same_v<T, PicardArgs>) run_picard(a, rep);
        else if constexpr (std::is_same_v<T, BilinearArgs>) run_bilinear(a, rep);
        else run_omega(a, rep);
      },
      args);
  rep.metadata["finished"] = utc_now();
  rep.metadata["notices"] = notices;
  return rep;
}

RunOutcome run(const RunConfig& config) {
  RunOutcome out;
  try {
    out.report = execute(config);
    if (!config.output_dir.empty()) write_report(out.report, config.output_dir);
  } catch (const Error& e) {
    out.exit_code = is_numerical(e.code()) ? 3 : 2;
    out.message = e.what();
    out.report.summary = {{"error", std::string(to_string(e.code()))}, {"message", e.what()}};
  } catch (const std::filesystem::filesystem_error& e) {
    out.exit_code = 2;
    out.message = e.what();
  }
  return out;
}

}  // namespace mbkdv
