// Copyright 2026 The GLyDER Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "glyder/optimizers.hpp"
#include "glyder/problems.hpp"
#include "glyder/schedulers.hpp"
#include "glyder/smoothness.hpp"

namespace glyder {

// Stepsize policies the benchmark runner knows how to drive.  The two oracle
// policies consume ground-truth information (exact gradient or exact noise
// level) and exist for verification runs.
enum class SchedulerName {
  glyder_theoretical,
  glyder_practical,
  constant,
  cosine,
  rsqrt,
  oracle_inner,
  oracle_expected,
};

// Everything needed to build a ProblemHandle deterministically.
struct ProblemSpec {
  ProblemKind kind = ProblemKind::noisy_quadratic;
  std::uint64_t data_seed = 7;

  // quadratic: eigenvalues linearly spaced over [min_eig, max_eig]
  std::size_t dim = 20;
  double min_eig = 0.1;
  double max_eig = 2.0;
  double sigma = 0.5;
  NoiseModel noise = NoiseModel::gaussian;

  // dataset problems
  std::size_t n_samples = 400;
  std::size_t batch = 16;

  // mlp
  std::vector<std::size_t> layers = {2, 12, 3};

  // Optional explicit start point; empty means the problem's own default.
  std::vector<double> x0;

  ProblemHandle make() const {
    ProblemHandle p = make_default_start();
    if (!x0.empty()) p.set_initial_point(x0);
    return p;
  }

  ProblemHandle make_default_start() const {
    switch (kind) {
      case ProblemKind::noisy_quadratic: {
        if (dim == 0) throw std::invalid_argument("problem: dim must be >= 1");
        Vec eig(dim);
        for (std::size_t i = 0; i < dim; ++i)
          eig[i] = dim == 1 ? max_eig
                            : min_eig + (max_eig - min_eig) * static_cast<double>(i) /
                                            static_cast<double>(dim - 1);
        return make_noisy_quadratic(std::move(eig), sigma, data_seed, noise);
      }
      case ProblemKind::logistic_regression:
        return make_logistic_regression(dim, n_samples, batch, data_seed);
      case ProblemKind::mlp_classifier:
        return make_mlp_classifier(layers, n_samples, batch, data_seed);
    }
    throw std::logic_error("ProblemSpec: unknown kind");
  }
};

struct SchedulerSpec {
  SchedulerName name = SchedulerName::constant;
  double eta0 = 0.1;
  double beta = 0.999;
  EmaConvention ema = EmaConvention::beta_on_history;
  DirectionRule direction = DirectionRule::mean;
  bool bias_correct = false;

  SmoothnessKind smoothness = SmoothnessKind::constant;
  CurvatureMode curvature = CurvatureMode::quadratic_form;
  double floor = 1e-8;
  // Explicit smoothness constant; 0 means "use the problem's L if known".
  double L = 0.0;

  double squash = 100.0;     // rsqrt knee
  std::int64_t horizon = 0;  // cosine horizon; 0 means the run length
};

struct RunConfig {
  ProblemSpec problem;
  SchedulerSpec scheduler;
  OptimizerKind optimizer = OptimizerKind::sgd;
  std::size_t n = 8;  // stochastic gradients aggregated per step
  std::int64_t steps = 500;
  std::vector<std::uint64_t> seeds = {1};
  std::string out;  // output path prefix; empty disables file output

  // Resolves the smoothness constant a scheduler should use, preferring the
  // explicit override.  Throws when the policy needs L and none is known.
  double resolve_L(const ProblemHandle& p) const {
    if (scheduler.L > 0.0) return scheduler.L;
    if (p.constants().L) return *p.constants().L;
    throw std::invalid_argument(
        "config: scheduler needs a smoothness constant but the problem has no "
        "known L; pass one explicitly");
  }

  void validate() const {
    if (steps < 1) throw std::invalid_argument("config: steps must be >= 1");
    if (seeds.empty()) throw std::invalid_argument("config: need at least one seed");
    if (n < 1) throw std::invalid_argument("config: n must be >= 1");

    const bool glyder_policy = scheduler.name == SchedulerName::glyder_theoretical ||
                               scheduler.name == SchedulerName::glyder_practical;
    if (glyder_policy && n < 2)
      throw std::invalid_argument("config: estimator policies need n >= 2");

    switch (scheduler.name) {
      case SchedulerName::constant:
      case SchedulerName::cosine:
      case SchedulerName::rsqrt:
        if (!(scheduler.eta0 > 0.0))
          throw std::invalid_argument("config: baseline eta0 must be > 0");
        break;
      case SchedulerName::glyder_practical:
        if (!(scheduler.eta0 >= 0.0))
          throw std::invalid_argument("config: eta0 must be >= 0");
        if (scheduler.beta < 0.0 || scheduler.beta >= 1.0)
          throw std::invalid_argument("config: beta must be in [0, 1)");
        if (scheduler.smoothness == SmoothnessKind::constant && scheduler.L == 0.0 &&
            problem.kind != ProblemKind::noisy_quadratic)
          throw std::invalid_argument(
              "config: constant smoothness on this problem needs an explicit L");
        break;
      case SchedulerName::oracle_expected:
        if (problem.kind != ProblemKind::noisy_quadratic)
          throw std::invalid_argument(
              "config: the expected-stepsize oracle needs a known noise level");
        break;
      default:
        break;
    }
    if (scheduler.horizon < 0)
      throw std::invalid_argument("config: cosine horizon must be >= 0");
    if (scheduler.name == SchedulerName::rsqrt && !(scheduler.squash > 0.0))
      throw std::invalid_argument("config: rsqrt squash must be > 0");
  }
};

// ---------------------------------------------------------------------------
// Enum <-> string spellings shared by the CLI, config files, and JSON output.

namespace names {

inline const char* of(ProblemKind k) {
  switch (k) {
    case ProblemKind::noisy_quadratic: return "quadratic";
    case ProblemKind::logistic_regression: return "logistic";
    case ProblemKind::mlp_classifier: return "mlp";
  }
  return "?";
}
inline const char* of(SchedulerName s) {
  switch (s) {
    case SchedulerName::glyder_theoretical: return "glyder-theoretical";
    case SchedulerName::glyder_practical: return "glyder-practical";
    case SchedulerName::constant: return "constant";
    case SchedulerName::cosine: return "cosine";
    case SchedulerName::rsqrt: return "rsqrt";
    case SchedulerName::oracle_inner: return "oracle-inner";
    case SchedulerName::oracle_expected: return "oracle-expected";
  }
  return "?";
}
inline const char* of(OptimizerKind k) {
  switch (k) {
    case OptimizerKind::sgd: return "sgd";
    case OptimizerKind::momentum: return "momentum";
    case OptimizerKind::adam: return "adam";
  }
  return "?";
}
inline const char* of(SmoothnessKind k) {
  switch (k) {
    case SmoothnessKind::constant: return "constant";
    case SmoothnessKind::proj_1d: return "proj1d";
    case SmoothnessKind::gnb: return "gnb";
  }
  return "?";
}
inline const char* of(CurvatureMode m) {
  return m == CurvatureMode::quadratic_form ? "quadratic-form" : "rayleigh";
}
inline const char* of(DirectionRule r) {
  return r == DirectionRule::mean ? "mean" : "sum";
}
inline const char* of(EmaConvention c) {
  return c == EmaConvention::beta_on_history ? "beta-on-history" : "beta-on-instant";
}
inline const char* of(NoiseModel m) {
  return m == NoiseModel::gaussian ? "gaussian" : "sphere";
}

template <typename Enum>
Enum parse(const std::string& s);

template <typename Enum, std::size_t N>
Enum parse_from(const std::string& s, const Enum (&all)[N], const char* what) {
  for (Enum e : all)
    if (s == of(e)) return e;
  std::string msg = std::string("unknown ") + what + " '" + s + "' (expected one of";
  for (Enum e : all) msg += std::string(" ") + of(e);
  throw std::invalid_argument(msg + ")");
}

template <>
inline ProblemKind parse<ProblemKind>(const std::string& s) {
  static constexpr ProblemKind all[] = {ProblemKind::noisy_quadratic,
                                        ProblemKind::logistic_regression,
                                        ProblemKind::mlp_classifier};
  return parse_from(s, all, "problem");
}
template <>
inline SchedulerName parse<SchedulerName>(const std::string& s) {
  static constexpr SchedulerName all[] = {
      SchedulerName::glyder_theoretical, SchedulerName::glyder_practical,
      SchedulerName::constant,           SchedulerName::cosine,
      SchedulerName::rsqrt,              SchedulerName::oracle_inner,
      SchedulerName::oracle_expected};
  return parse_from(s, all, "scheduler");
}
template <>
inline OptimizerKind parse<OptimizerKind>(const std::string& s) {
  static constexpr OptimizerKind all[] = {OptimizerKind::sgd, OptimizerKind::momentum,
                                          OptimizerKind::adam};
  return parse_from(s, all, "optimizer");
}
template <>
inline SmoothnessKind parse<SmoothnessKind>(const std::string& s) {
  static constexpr SmoothnessKind all[] = {SmoothnessKind::constant,
                                           SmoothnessKind::proj_1d, SmoothnessKind::gnb};
  return parse_from(s, all, "smoothness");
}
template <>
inline CurvatureMode parse<CurvatureMode>(const std::string& s) {
  static constexpr CurvatureMode all[] = {CurvatureMode::quadratic_form,
                                          CurvatureMode::rayleigh};
  return parse_from(s, all, "curvature-mode");
}
template <>
inline DirectionRule parse<DirectionRule>(const std::string& s) {
  static constexpr DirectionRule all[] = {DirectionRule::mean, DirectionRule::sum};
  return parse_from(s, all, "direction");
}
template <>
inline EmaConvention parse<EmaConvention>(const std::string& s) {
  static constexpr EmaConvention all[] = {EmaConvention::beta_on_history,
                                          EmaConvention::beta_on_instant};
  return parse_from(s, all, "ema-convention");
}
template <>
inline NoiseModel parse<NoiseModel>(const std::string& s) {
  static constexpr NoiseModel all[] = {NoiseModel::gaussian, NoiseModel::sphere};
  return parse_from(s, all, "noise");
}

}  // namespace names

// ---------------------------------------------------------------------------
// Scalar and list parsing with full-token validation.

namespace parse {

inline double to_double(const std::string& s, const char* what) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument(std::string("bad number for ") + what + ": '" + s + "'");
  }
}

inline std::int64_t to_int(const std::string& s, const char* what) {
  std::int64_t v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size())
    throw std::invalid_argument(std::string("bad integer for ") + what + ": '" + s + "'");
  return v;
}

inline std::uint64_t to_uint(const std::string& s, const char* what) {
  std::uint64_t v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size())
    throw std::invalid_argument(std::string("bad unsigned integer for ") + what +
                                ": '" + s + "'");
  return v;
}

inline bool to_bool(const std::string& s, const char* what) {
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw std::invalid_argument(std::string("bad boolean for ") + what + ": '" + s + "'");
}

template <typename T, typename F>
std::vector<T> to_list(const std::string& s, const char* what, F item) {
  std::vector<T> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ','))
    if (!tok.empty()) out.push_back(item(tok, what));
  if (out.empty())
    throw std::invalid_argument(std::string("empty list for ") + what);
  return out;
}

}  // namespace parse

// Applies one key=value setting.  Unknown keys are errors so typos in config
// files fail loudly instead of silently running defaults.
inline void apply_setting(RunConfig& cfg, const std::string& key,
                          const std::string& value) {
  using namespace parse;
  if (key == "problem") cfg.problem.kind = names::parse<ProblemKind>(value);
  else if (key == "data-seed") cfg.problem.data_seed = to_uint(value, "data-seed");
  else if (key == "dim") cfg.problem.dim = static_cast<std::size_t>(to_int(value, "dim"));
  else if (key == "min-eig") cfg.problem.min_eig = to_double(value, "min-eig");
  else if (key == "max-eig") cfg.problem.max_eig = to_double(value, "max-eig");
  else if (key == "sigma") cfg.problem.sigma = to_double(value, "sigma");
  else if (key == "noise") cfg.problem.noise = names::parse<NoiseModel>(value);
  else if (key == "samples")
    cfg.problem.n_samples = static_cast<std::size_t>(to_int(value, "samples"));
  else if (key == "batch")
    cfg.problem.batch = static_cast<std::size_t>(to_int(value, "batch"));
  else if (key == "layers")
    cfg.problem.layers = to_list<std::size_t>(value, "layers", [](const std::string& t, const char* w) {
      return static_cast<std::size_t>(to_int(t, w));
    });
  else if (key == "x0")
    cfg.problem.x0 = to_list<double>(value, "x0", [](const std::string& t, const char* w) {
      return to_double(t, w);
    });
  else if (key == "scheduler") cfg.scheduler.name = names::parse<SchedulerName>(value);
  else if (key == "eta0") cfg.scheduler.eta0 = to_double(value, "eta0");
  else if (key == "beta") cfg.scheduler.beta = to_double(value, "beta");
  else if (key == "ema-convention")
    cfg.scheduler.ema = names::parse<EmaConvention>(value);
  else if (key == "direction")
    cfg.scheduler.direction = names::parse<DirectionRule>(value);
  else if (key == "bias-correct")
    cfg.scheduler.bias_correct = to_bool(value, "bias-correct");
  else if (key == "smoothness")
    cfg.scheduler.smoothness = names::parse<SmoothnessKind>(value);
  else if (key == "curvature-mode")
    cfg.scheduler.curvature = names::parse<CurvatureMode>(value);
  else if (key == "floor") cfg.scheduler.floor = to_double(value, "floor");
  else if (key == "L") cfg.scheduler.L = to_double(value, "L");
  else if (key == "squash") cfg.scheduler.squash = to_double(value, "squash");
  else if (key == "horizon") cfg.scheduler.horizon = to_int(value, "horizon");
  else if (key == "optimizer") cfg.optimizer = names::parse<OptimizerKind>(value);
  else if (key == "n") cfg.n = static_cast<std::size_t>(to_int(value, "n"));
  else if (key == "steps") cfg.steps = to_int(value, "steps");
  else if (key == "seeds")
    cfg.seeds = to_list<std::uint64_t>(value, "seeds", [](const std::string& t, const char* w) {
      return to_uint(t, w);
    });
  else if (key == "out") cfg.out = value;
  else throw std::invalid_argument("unknown config key '" + key + "'");
}

// Plain key = value file, one setting per line, '#' starts a comment.
inline void load_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto strip = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r");
      if (a == std::string::npos) return std::string();
      const auto b = s.find_last_not_of(" \t\r");
      return s.substr(a, b - a + 1);
    };
    const std::string stripped = strip(line);
    if (stripped.empty()) continue;
    const std::size_t eq = stripped.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                  ": expected key = value");
    try {
      apply_setting(cfg, strip(stripped.substr(0, eq)), strip(stripped.substr(eq + 1)));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
}

}  // namespace glyder
