#include "ampforge/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "ampforge/channel.hpp"
#include "ampforge/classify.hpp"
#include "ampforge/gram.hpp"
#include "ampforge/homodyne.hpp"
#include "ampforge/kraus.hpp"

namespace ampforge::io {

namespace {

constexpr const char* kLibraryVersion = "ampforge 0.1.0";

std::uint64_t fnv1a64(const std::string& text) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

[[noreturn]] void schema_error(const std::string& path,
                               const std::string& what) {
  throw SchemaError(path + ": " + what);
}

double get_number(const json& j, const std::string& path) {
  if (!j.is_number()) schema_error(path, "expected a number");
  return j.get<double>();
}

Complex get_complex(const json& j, const std::string& path) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  if (!j.is_object() || !j.contains("re") || !j.contains("im"))
    schema_error(path, "expected {re, im}");
  return Complex(get_number(j["re"], path + ".re"),
                 get_number(j["im"], path + ".im"));
}

json complex_json(Complex z) {
  return json{{"re", z.real()}, {"im", z.imag()}};
}

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      row.push_back(complex_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

StateDescriptor parse_state(const json& j, const std::string& path) {
  if (!j.is_object()) schema_error(path, "expected a state object");
  if (!j.contains("type")) schema_error(path + ".type", "missing field");
  std::string type = j["type"].get<std::string>();
  StateDescriptor s;
  if (type == "coherent") {
    s.type = StateDescriptor::Type::Coherent;
    if (!j.contains("alpha")) schema_error(path + ".alpha", "missing field");
    s.alpha = get_complex(j["alpha"], path + ".alpha");
  } else if (type == "gaussian") {
    s.type = StateDescriptor::Type::Gaussian;
    if (!j.contains("d") || !j["d"].is_array() || j["d"].size() != 2)
      schema_error(path + ".d", "expected a 2-vector");
    s.d << get_number(j["d"][0], path + ".d[0]"),
        get_number(j["d"][1], path + ".d[1]");
    if (j.contains("gamma")) {
      const json& g = j["gamma"];
      if (!g.is_array() || g.size() != 2 || !g[0].is_array() ||
          g[0].size() != 2 || g[1].size() != 2)
        schema_error(path + ".gamma", "expected a 2x2 matrix");
      for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c)
          s.gamma(r, c) = get_number(g[r][c], path + ".gamma");
    } else {
      s.gamma = Eigen::Matrix2d::Identity();
    }
  } else if (type == "fock") {
    s.type = StateDescriptor::Type::Fock;
    if (!j.contains("amplitudes") || !j["amplitudes"].is_array() ||
        j["amplitudes"].empty())
      schema_error(path + ".amplitudes", "expected a nonempty array");
    for (std::size_t k = 0; k < j["amplitudes"].size(); ++k)
      s.fock.push_back(get_complex(j["amplitudes"][k],
                                   path + ".amplitudes[" + std::to_string(k) +
                                       "]"));
  } else {
    schema_error(path + ".type",
                 "unknown state type '" + type +
                     "'; valid: coherent, gaussian, fock");
  }
  return s;
}

Eigen::VectorXd parse_real_vector(const json& j, const std::string& path,
                                  int n, double lo, double hi) {
  Eigen::VectorXd v(n);
  if (j.is_number()) {
    v.setConstant(j.get<double>());
    if (v(0) < lo || v(0) > hi)
      schema_error(path, "value outside [" + std::to_string(lo) + ", " +
                             std::to_string(hi) + "]");
    return v;
  }
  if (!j.is_array() || static_cast<int>(j.size()) != n)
    schema_error(path, "expected a number or an array of length " +
                           std::to_string(n));
  for (int i = 0; i < n; ++i) {
    std::string p = path + "[" + std::to_string(i) + "]";
    v(i) = get_number(j[i], p);
    if (v(i) < lo || v(i) > hi)
      schema_error(p, "value outside [" + std::to_string(lo) + ", " +
                          std::to_string(hi) + "]");
  }
  return v;
}

// -- state realization ------------------------------------------------

int common_fock_dim(const ProblemFile& pb) {
  int dim = 0;
  auto visit = [&](const StateDescriptor& s, double gain) {
    switch (s.type) {
      case StateDescriptor::Type::Coherent:
        dim = std::max(dim, default_coherent_dim(s.alpha * gain));
        break;
      case StateDescriptor::Type::Fock:
        dim = std::max(dim, static_cast<int>(s.fock.size()));
        break;
      case StateDescriptor::Type::Gaussian:
        throw SchemaError(
            "states: gaussian descriptors are not Fock-representable; use "
            "coherent or fock for this task");
    }
  };
  for (std::size_t i = 0; i < pb.states.size(); ++i) {
    double g = pb.gains.size() ? pb.gains(static_cast<int>(i)) : 1.0;
    visit(pb.states[i], std::max(1.0, g));
  }
  for (const auto& s : pb.targets) visit(s, 1.0);
  return std::max(dim, 20);
}

PureState to_pure(const StateDescriptor& s, int dim, const std::string& path) {
  switch (s.type) {
    case StateDescriptor::Type::Coherent:
      return make_coherent_state(s.alpha, dim);
    case StateDescriptor::Type::Fock: {
      Vector v = Vector::Zero(dim);
      for (std::size_t k = 0; k < s.fock.size(); ++k)
        v(static_cast<int>(k)) = s.fock[k];
      double n = v.norm();
      if (std::abs(n - 1.0) > 1e-6)
        schema_error(path, "fock amplitudes are not normalized");
      v /= n;
      return PureState(std::move(v));
    }
    default:
      schema_error(path, "gaussian state cannot enter a Fock-space task");
  }
}

GaussianState to_gaussian(const StateDescriptor& s, const std::string& path) {
  switch (s.type) {
    case StateDescriptor::Type::Coherent:
      return GaussianState::coherent(s.alpha);
    case StateDescriptor::Type::Gaussian:
      return GaussianState::make(s.d, s.gamma);
    default:
      schema_error(path, "fock state has no Gaussian moments descriptor here");
  }
}

struct FockSets {
  std::vector<PureState> inputs;
  std::vector<PureState> targets;
  int dim = 0;
};

FockSets realize_fock_sets(const ProblemFile& pb) {
  FockSets sets;
  sets.dim = common_fock_dim(pb);
  for (std::size_t i = 0; i < pb.states.size(); ++i)
    sets.inputs.push_back(
        to_pure(pb.states[i], sets.dim, "states[" + std::to_string(i) + "]"));
  if (!pb.targets.empty()) {
    for (std::size_t i = 0; i < pb.targets.size(); ++i)
      sets.targets.push_back(to_pure(pb.targets[i], sets.dim,
                                     "targets[" + std::to_string(i) + "]"));
  } else {
    // noiseless coherent targets g_i * alpha_i
    for (std::size_t i = 0; i < pb.states.size(); ++i) {
      const auto& s = pb.states[i];
      if (s.type != StateDescriptor::Type::Coherent)
        schema_error("targets",
                     "required unless every input state is coherent");
      double g = pb.gains.size() ? pb.gains(static_cast<int>(i)) : 1.0;
      sets.targets.push_back(make_coherent_state(s.alpha * g, sets.dim));
    }
  }
  if (sets.targets.size() != sets.inputs.size())
    schema_error("targets", "must match the number of input states");
  return sets;
}

Observable realize_observable(const json& spec, int dim,
                              const std::string& path) {
  if (spec.is_string()) {
    std::string name = spec.get<std::string>();
    if (name == "number") return Observable::number(dim);
    if (name == "quadrature-q") return Observable::quadrature_q(dim);
    if (name == "quadrature-p") return Observable::quadrature_p(dim);
    schema_error(path, "unknown observable '" + name +
                           "'; valid: number, quadrature-q, quadrature-p, "
                           "{matrix: ...}");
  }
  if (spec.is_object() && spec.contains("matrix")) {
    const json& rows = spec["matrix"];
    if (!rows.is_array() || rows.empty())
      schema_error(path + ".matrix", "expected a square matrix");
    int n = static_cast<int>(rows.size());
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) {
      if (!rows[i].is_array() || static_cast<int>(rows[i].size()) != n)
        schema_error(path + ".matrix", "expected a square matrix");
      for (int j = 0; j < n; ++j)
        m(i, j) = get_complex(rows[i][j], path + ".matrix");
    }
    return Observable(std::move(m));
  }
  schema_error(path, "expected an observable name or {matrix: ...}");
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// -- task runners -----------------------------------------------------

struct TaskContext {
  const ProblemFile& pb;
  std::uint64_t seed;
  double tol;
  json verdicts = json::object();
  json tables = json::object();
  json warnings = json::array();
  std::string csv;
};

json certificate_json(const FeasibilityCertificate& cert) {
  const char* method = cert.method == FeasibilityMethod::AnalyticTwoState
                           ? "analytic-two-state"
                           : cert.method == FeasibilityMethod::PenaltySearch
                                 ? "penalty-search"
                                 : "user-supplied";
  return json{{"feasible", cert.feasible},
              {"method", method},
              {"min_eig_omega", cert.min_eig_omega},
              {"min_eig_k", cert.min_eig_k},
              {"omega", matrix_json(cert.omega.entries)},
              {"residual_k", matrix_json(cert.residual_k)}};
}

std::optional<FeasibilityCertificate> decide_feasibility(TaskContext& ctx,
                                                         const GramMatrix& g_pi,
                                                         const GramMatrix& g_xi,
                                                         double& best_penalty) {
  const int n = g_pi.size();
  best_penalty = 0.0;
  if (n == 2 && ctx.pb.probs(0) == ctx.pb.probs(1)) {
    auto cert =
        solve_two_state(g_pi.entries(0, 1), g_xi.entries(0, 1), ctx.pb.probs(0));
    auto mp = max_success_probability(g_pi.entries(0, 1), g_xi.entries(0, 1));
    ctx.verdicts["max_success_probability"] = mp.p;
    ctx.verdicts["degenerate_target"] = mp.degenerate_target;
    return cert;
  }
  int restarts = ctx.pb.params.value("restarts", 64);
  auto result = search_omega(g_pi, g_xi, ctx.pb.probs, restarts, ctx.seed);
  best_penalty = result.best_penalty;
  if (result.found()) return result.certificate;
  return std::nullopt;
}

void run_feasibility(TaskContext& ctx, bool synthesize) {
  if (ctx.pb.states.size() < 2)
    schema_error("states", "feasibility needs at least two states");
  FockSets sets = realize_fock_sets(ctx.pb);
  GramMatrix g_pi = gram_matrix(sets.inputs);
  GramMatrix g_xi = gram_matrix(sets.targets);
  ctx.tables["gram_inputs"] = matrix_json(g_pi.entries);
  ctx.tables["gram_targets"] = matrix_json(g_xi.entries);

  double best_penalty = 0.0;
  auto cert = decide_feasibility(ctx, g_pi, g_xi, best_penalty);
  if (!cert) {
    ctx.verdicts["feasible"] = false;
    ctx.verdicts["method"] = "penalty-search";
    ctx.verdicts["best_penalty"] = best_penalty;
    ctx.warnings.push_back(
        "search exhausted without a feasible omega; this is evidence, not "
        "proof, of infeasibility");
    return;
  }
  ctx.verdicts["feasible"] = cert->feasible;
  ctx.tables["certificate"] = certificate_json(*cert);
  ctx.verdicts["method"] = ctx.tables["certificate"]["method"];

  if (!synthesize || !cert->feasible) {
    if (synthesize)
      ctx.warnings.push_back("infeasible spec: no Kraus set synthesized");
    return;
  }
  auto duals = dual_basis(sets.inputs);
  Matrix c = factor_omega(cert->omega);
  KrausSet kraus = build_kraus(c, duals, sets.targets);
  Eigen::VectorXd gains = Eigen::VectorXd::Ones(g_pi.size());
  AmplificationSpec spec = AmplificationSpec::make(
      sets.inputs, sets.targets, gains, ctx.pb.probs, {});
  auto report = verify_kraus(kraus, spec);

  json ops = json::array();
  for (const auto& op : kraus.operators) ops.push_back(matrix_json(op));
  ctx.tables["kraus_operators"] = std::move(ops);
  ctx.tables["coefficients"] = matrix_json(kraus.coeffs);
  json checks = json::array();
  for (const auto& chk : report.per_state)
    checks.push_back(json{{"success_prob", chk.success_prob},
                          {"expected_prob", chk.expected_prob},
                          {"fidelity", chk.fidelity},
                          {"prob_ok", chk.prob_ok},
                          {"fidelity_ok", chk.fidelity_ok}});
  ctx.tables["verification"] =
      json{{"per_state", std::move(checks)},
           {"completeness_margin", report.completeness_margin},
           {"completeness_ok", report.completeness_ok},
           {"all_passed", report.all_passed}};
  ctx.verdicts["verification_passed"] = report.all_passed;
}

void run_classify(TaskContext& ctx) {
  FockSets sets = realize_fock_sets(ctx.pb);
  std::vector<Observable> observables;
  for (std::size_t i = 0; i < ctx.pb.observables.size(); ++i)
    observables.push_back(
        realize_observable(ctx.pb.observables[i], sets.dim,
                           "observables[" + std::to_string(i) + "]"));
  AmplificationSpec spec =
      AmplificationSpec::make(sets.inputs, sets.targets, ctx.pb.gains,
                              ctx.pb.probs, observables);
  auto cls = classify(spec, ctx.seed);
  ctx.verdicts = json{{"deterministic", cls.deterministic},
                      {"noiseless", cls.noiseless},
                      {"linear", cls.linear},
                      {"feasible", cls.feasible},
                      {"notes", cls.notes}};

  json table = json::array();
  for (std::size_t o = 0; o < observables.size(); ++o) {
    for (int i = 0; i < spec.size(); ++i) {
      table.push_back(
          json{{"observable", o},
               {"state", i},
               {"expectation_in", expectation(observables[o], spec.inputs[i])},
               {"expectation_out",
                expectation(observables[o], spec.targets[i])},
               {"fluctuation_in", fluctuation(observables[o], spec.inputs[i])},
               {"fluctuation_out",
                fluctuation(observables[o], spec.targets[i])}});
    }
  }
  ctx.tables["per_observable"] = std::move(table);
}

json theorem_report_json(const TheoremReport& report) {
  json pairs = json::array();
  for (const auto& p : report.pairs)
    pairs.push_back(json{{"i", p.i},
                         {"j", p.j},
                         {"cos_theta", p.cos_theta},
                         {"rhs", p.rhs},
                         {"rhs_gain_only", p.rhs_gain_only},
                         {"margin", p.margin},
                         {"vacuous", p.vacuous},
                         {"satisfied", p.satisfied}});
  return json{{"satisfied", report.satisfied}, {"pairs", std::move(pairs)}};
}

void run_theorem(TaskContext& ctx) {
  std::vector<GaussianState> states;
  for (std::size_t i = 0; i < ctx.pb.states.size(); ++i)
    states.push_back(
        to_gaussian(ctx.pb.states[i], "states[" + std::to_string(i) + "]"));
  auto report = theorem_check(states, ctx.pb.gains);
  ctx.verdicts["theorem_satisfied"] = report.satisfied;
  ctx.tables["theorem"] = theorem_report_json(report);
  try {
    auto corollary = corollary_check(states, ctx.pb.gains);
    ctx.verdicts["corollary_satisfied"] = corollary.satisfied;
    ctx.tables["corollary"] = theorem_report_json(corollary);
  } catch (const TargetAmplitudeMismatch&) {
    ctx.warnings.push_back(
        "corollary skipped: target amplitudes g_i^2 |d_i|^2 are not equal");
  }
}

void run_gain_probability(TaskContext& ctx) {
  double distance;
  if (ctx.pb.params.contains("pair_distance")) {
    distance = get_number(ctx.pb.params["pair_distance"],
                          "params.pair_distance");
  } else {
    if (ctx.pb.states.size() != 2)
      schema_error("states",
                   "gain-probability needs two states or params.pair_distance");
    distance = phase_distance(to_gaussian(ctx.pb.states[0], "states[0]"),
                              to_gaussian(ctx.pb.states[1], "states[1]"));
  }
  ctx.verdicts["pair_distance"] = distance;

  std::vector<double> gs;
  const json& gp = ctx.pb.params.contains("g") ? ctx.pb.params["g"] : json(2.0);
  if (gp.is_array())
    for (std::size_t i = 0; i < gp.size(); ++i)
      gs.push_back(get_number(gp[i], "params.g[" + std::to_string(i) + "]"));
  else
    gs.push_back(get_number(gp, "params.g"));

  json table = json::array();
  for (double g : gs)
    table.push_back(json{{"g", g}, {"f", gain_probability_f(g, distance)}});
  ctx.tables["f_of_g"] = std::move(table);

  if (ctx.pb.params.contains("C") && ctx.pb.params.contains("V")) {
    GainProbabilityModel model;
    model.C = get_number(ctx.pb.params["C"], "params.C");
    model.V = get_number(ctx.pb.params["V"], "params.V");
    model.D = distance;
    auto mg = min_gain(model);
    ctx.verdicts["g_min"] = mg.g_min;
    ctx.verdicts["p0"] = mg.p0;
    ctx.verdicts["constraint_active"] = mg.constraint_active;
  }
}

void run_homodyne(TaskContext& ctx) {
  const json& params = ctx.pb.params;
  auto grid = [&](const char* key, double fallback) {
    std::vector<double> vals;
    if (!params.contains(key)) {
      vals.push_back(fallback);
      return vals;
    }
    const json& j = params[key];
    if (j.is_array())
      for (std::size_t i = 0; i < j.size(); ++i)
        vals.push_back(get_number(j[i], std::string("params.") + key + "[" +
                                            std::to_string(i) + "]"));
    else
      vals.push_back(get_number(j, std::string("params.") + key));
    return vals;
  };
  std::vector<double> bs = grid("b", 1.0);
  std::vector<double> deltas = grid("delta", M_PI / 6.0);
  double c = params.contains("c") ? get_number(params["c"], "params.c") : 10.0;
  long trials =
      params.contains("trials")
          ? static_cast<long>(get_number(params["trials"], "params.trials"))
          : 100000;
  int workers = params.value("workers", 1);

  std::ostringstream csv;
  csv << "b,c,delta,mean,std,sensitivity,emp_mean,emp_std,trials,seed\n";
  json table = json::array();
  for (double b : bs) {
    for (double delta : deltas) {
      HomodyneSetup setup{b, c, delta};
      double mean = homodyne_mean(setup);
      double stddev = homodyne_std(setup);
      double sens = std::numeric_limits<double>::quiet_NaN();
      try {
        sens = homodyne_sensitivity(setup);
      } catch (const Error&) {
        // divergent or undefined sensitivity: leave NaN in the table
      }
      auto sample = simulate_homodyne(setup, trials, ctx.seed, workers);
      csv << format_double(b) << ',' << format_double(c) << ','
          << format_double(delta) << ',' << format_double(mean) << ','
          << format_double(stddev) << ',' << format_double(sens) << ','
          << format_double(sample.emp_mean) << ','
          << format_double(sample.emp_std) << ',' << trials << ',' << ctx.seed
          << '\n';
      table.push_back(json{{"b", b},
                           {"c", c},
                           {"delta", delta},
                           {"mean", mean},
                           {"std", stddev},
                           {"emp_mean", sample.emp_mean},
                           {"emp_std", sample.emp_std}});
    }
  }
  ctx.csv = csv.str();
  ctx.tables["sweep"] = std::move(table);
}

ChannelModel parse_channel(const json& params) {
  if (!params.contains("channel")) return ChannelModel::pure_loss(1.0);
  const json& ch = params["channel"];
  std::string kind = ch.value("kind", "pure-loss");
  if (kind == "pure-loss")
    return ChannelModel::pure_loss(ch.value("rate", 1.0));
  if (kind == "time-dependent-loss") {
    if (ch.contains("times")) {
      std::vector<double> ts, rs;
      for (std::size_t i = 0; i < ch["times"].size(); ++i)
        ts.push_back(get_number(ch["times"][i], "params.channel.times"));
      for (std::size_t i = 0; i < ch["rates"].size(); ++i)
        rs.push_back(get_number(ch["rates"][i], "params.channel.rates"));
      return ChannelModel::tabulated(std::move(ts), std::move(rs));
    }
    return ChannelModel::cosine_rate(ch.value("offset", 1.0),
                                     ch.value("amplitude", 0.0),
                                     ch.value("omega", 1.0));
  }
  schema_error("params.channel.kind",
               "unknown kind '" + kind +
                   "'; valid: pure-loss, time-dependent-loss");
}

void run_channel(TaskContext& ctx) {
  if (ctx.pb.states.size() != 2)
    schema_error("states", "channel task needs exactly two states");
  GaussianState a = to_gaussian(ctx.pb.states[0], "states[0]");
  GaussianState b = to_gaussian(ctx.pb.states[1], "states[1]");
  double gain = ctx.pb.params.value("gain", 2.0);
  ChannelModel ch = parse_channel(ctx.pb.params);

  std::vector<double> times;
  if (ctx.pb.params.contains("times")) {
    for (std::size_t i = 0; i < ctx.pb.params["times"].size(); ++i)
      times.push_back(get_number(ctx.pb.params["times"][i], "params.times"));
  } else {
    double t_max = ctx.pb.params.value("t_max", 3.0);
    int steps = ctx.pb.params.value("steps", 300);
    if (steps < 3) schema_error("params.steps", "need at least 3 steps");
    for (int i = 0; i <= steps; ++i) times.push_back(t_max * i / steps);
  }

  GaussianState a_amp = a, b_amp = b;
  a_amp.d *= gain;
  b_amp.d *= gain;
  auto plain = distance_trajectory(a, b, ch, times);
  auto amp = distance_trajectory(a_amp, b_amp, ch, times);
  auto chi_plain = decay_rate(plain);
  auto chi_amp = decay_rate(amp);

  std::ostringstream csv;
  csv << "t,D_plain,D_amplified,chi_plain,chi_amplified\n";
  for (std::size_t i = 0; i < plain.size(); ++i)
    csv << format_double(plain[i].first) << ','
        << format_double(plain[i].second) << ',' << format_double(amp[i].second)
        << ',' << format_double(chi_plain[i].second) << ','
        << format_double(chi_amp[i].second) << '\n';
  ctx.csv = csv.str();

  ctx.verdicts["initial_distance"] = plain.front().second;
  ctx.verdicts["markovian"] = ch.markovian();
  if (ctx.pb.params.contains("threshold") &&
      ch.kind() == ChannelModel::Kind::PureLoss) {
    double threshold =
        get_number(ctx.pb.params["threshold"], "params.threshold");
    auto h = detection_horizon(a, b, gain, ch, threshold);
    ctx.verdicts["t_plain"] = h.t_plain;
    ctx.verdicts["t_amplified"] = h.t_amplified;
  }
}

}  // namespace

std::string task_name(Task t) {
  switch (t) {
    case Task::Feasibility: return "feasibility";
    case Task::Synthesize: return "synthesize";
    case Task::Classify: return "classify";
    case Task::Theorem: return "theorem";
    case Task::GainProbability: return "gain-probability";
    case Task::Homodyne: return "homodyne";
    case Task::Channel: return "channel";
  }
  return "unknown";
}

ProblemFile parse_problem(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw SchemaError("$: expected a JSON object");

  ProblemFile pb;
  pb.input_hash = fnv1a64(text);

  if (!j.contains("version")) schema_error("version", "missing field");
  pb.version = j["version"].is_string() ? j["version"].get<std::string>()
                                        : j["version"].dump();
  if (pb.version != "1")
    throw VersionUnsupported("version '" + pb.version +
                             "' unsupported; expected \"1\"");

  if (!j.contains("task")) schema_error("task", "missing field");
  std::string task = j["task"].get<std::string>();
  static const std::pair<const char*, Task> kTasks[] = {
      {"feasibility", Task::Feasibility}, {"synthesize", Task::Synthesize},
      {"classify", Task::Classify},       {"theorem", Task::Theorem},
      {"gain-probability", Task::GainProbability},
      {"homodyne", Task::Homodyne},       {"channel", Task::Channel}};
  bool matched = false;
  for (const auto& [name, value] : kTasks)
    if (task == name) {
      pb.task = value;
      matched = true;
    }
  if (!matched)
    schema_error("task",
                 "unknown task '" + task +
                     "'; valid: feasibility, synthesize, classify, theorem, "
                     "gain-probability, homodyne, channel");

  if (j.contains("states")) {
    if (!j["states"].is_array()) schema_error("states", "expected an array");
    for (std::size_t i = 0; i < j["states"].size(); ++i)
      pb.states.push_back(
          parse_state(j["states"][i], "states[" + std::to_string(i) + "]"));
  }
  if (j.contains("targets")) {
    if (!j["targets"].is_array()) schema_error("targets", "expected an array");
    for (std::size_t i = 0; i < j["targets"].size(); ++i)
      pb.targets.push_back(
          parse_state(j["targets"][i], "targets[" + std::to_string(i) + "]"));
  }

  const int n = static_cast<int>(pb.states.size());
  pb.gains = j.contains("gains")
                 ? parse_real_vector(j["gains"], "gains", n, 0.0, 1e12)
                 : Eigen::VectorXd::Ones(n);
  pb.probs = j.contains("probs")
                 ? parse_real_vector(j["probs"], "probs", n, 0.0, 1.0)
                 : Eigen::VectorXd::Ones(n);

  if (j.contains("observables")) {
    if (!j["observables"].is_array())
      schema_error("observables", "expected an array");
    for (const auto& o : j["observables"]) pb.observables.push_back(o);
  }

  pb.params = j.value("params", json::object());
  if (pb.params.contains("tol") &&
      get_number(pb.params["tol"], "params.tol") <= 0.0)
    schema_error("params.tol", "tolerance must be > 0");
  return pb;
}

std::string Report::to_string() const { return body.dump(2) + "\n"; }

Report run_task(const ProblemFile& problem, const RunOptions& opts) {
  TaskContext ctx{problem,
                  opts.seed.value_or(static_cast<std::uint64_t>(
                      problem.params.value("seed", 0))),
                  opts.tol.value_or(problem.params.value("tol", 1e-9))};

  switch (problem.task) {
    case Task::Feasibility: run_feasibility(ctx, false); break;
    case Task::Synthesize: run_feasibility(ctx, true); break;
    case Task::Classify: run_classify(ctx); break;
    case Task::Theorem: run_theorem(ctx); break;
    case Task::GainProbability: run_gain_probability(ctx); break;
    case Task::Homodyne: run_homodyne(ctx); break;
    case Task::Channel: run_channel(ctx); break;
  }

  Report report;
  report.body = json{{"task", task_name(problem.task)},
                     {"verdicts", std::move(ctx.verdicts)},
                     {"tables", std::move(ctx.tables)},
                     {"tolerances", json{{"tol", ctx.tol}}},
                     {"warnings", std::move(ctx.warnings)},
                     {"provenance",
                      json{{"input_hash", hex64(problem.input_hash)},
                           {"seed", ctx.seed},
                           {"library_version", kLibraryVersion}}}};
  report.csv = std::move(ctx.csv);
  return report;
}

}  // namespace ampforge::io
