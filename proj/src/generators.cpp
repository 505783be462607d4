#include "pathstat/generators.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "pathstat/rng.hpp"

namespace pathstat {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

struct KindInfo {
  std::string_view name;
  std::vector<std::string_view> params;
};

const std::vector<KindInfo>& kinds() {
  static const std::vector<KindInfo> table = {
      {"constant", {"c"}},
      {"monotone", {"slope"}},
      {"unique_peak", {"peak_height"}},
      {"sine", {"theta", "phi0"}},
      {"random_phase_sine", {"theta"}},
      {"iid_normal", {"mu", "sigma"}},
      {"ar1", {"rho", "sigma"}},
      {"block_mixture", {"level_a", "level_b"}},
  };
  return table;
}

std::vector<double> param_values(const GeneratorParams& params) {
  return std::visit(
      overloaded{
          [](const gen::Constant& p) { return std::vector<double>{p.c}; },
          [](const gen::Monotone& p) { return std::vector<double>{p.slope}; },
          [](const gen::UniquePeak& p) { return std::vector<double>{p.peak_height}; },
          [](const gen::Sine& p) { return std::vector<double>{p.theta, p.phi0}; },
          [](const gen::RandomPhaseSine& p) { return std::vector<double>{p.theta}; },
          [](const gen::IidNormal& p) { return std::vector<double>{p.mu, p.sigma}; },
          [](const gen::Ar1& p) { return std::vector<double>{p.rho, p.sigma}; },
          [](const gen::BlockMixture& p) { return std::vector<double>{p.level_a, p.level_b}; },
      },
      params);
}

GeneratorParams make_params(std::size_t kind_index, const std::vector<double>& v) {
  switch (kind_index) {
    case 0: return gen::Constant{v[0]};
    case 1: return gen::Monotone{v[0]};
    case 2: return gen::UniquePeak{v[0]};
    case 3: return gen::Sine{v[0], v[1]};
    case 4: return gen::RandomPhaseSine{v[0]};
    case 5: return gen::IidNormal{v[0], v[1]};
    case 6: return gen::Ar1{v[0], v[1]};
    default: return gen::BlockMixture{v[0], v[1]};
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  if (trim(s).empty()) return out;
  std::size_t pos = 0;
  while (true) {
    const auto next = s.find(sep, pos);
    out.push_back(trim(s.substr(pos, next - pos)));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return out;
}

double to_double(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::invalid_argument("not a number: '" + std::string(s) + "'");
  }
  return v;
}

std::uint64_t to_u64(std::string_view s) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec == std::errc() && ptr == s.data() + s.size()) return v;
  // accept forms such as 1e5 for lengths
  const double d = to_double(s);
  if (d < 0 || d != std::floor(d) || d > 1.8e19) {
    throw std::invalid_argument("not a non-negative integer: '" + std::string(s) + "'");
  }
  return static_cast<std::uint64_t>(d);
}

std::string format_number(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

}  // namespace

std::string_view GeneratorSpec::kind() const { return kinds()[params.index()].name; }

bool GeneratorSpec::is_random() const {
  return !std::holds_alternative<gen::Constant>(params) &&
         !std::holds_alternative<gen::Monotone>(params) &&
         !std::holds_alternative<gen::Sine>(params);
}

void validate(const GeneratorSpec& spec) {
  if (spec.length < 1) throw std::invalid_argument("generator length must be at least 1");
  for (double v : param_values(spec.params)) {
    if (!std::isfinite(v)) throw std::invalid_argument("generator parameters must be finite");
  }
  const auto check_theta = [](double theta) {
    if (!(theta > 0.0 && theta < 2.0 * std::numbers::pi)) {
      throw std::invalid_argument("theta must lie in (0, 2*pi)");
    }
  };
  std::visit(overloaded{
                 [](const gen::Constant&) {},
                 [](const gen::Monotone&) {},
                 [](const gen::UniquePeak& p) {
                   if (!(p.peak_height > 4.0)) {
                     throw std::invalid_argument("peak_height must exceed the noise bound 4");
                   }
                 },
                 [&](const gen::Sine& p) { check_theta(p.theta); },
                 [&](const gen::RandomPhaseSine& p) { check_theta(p.theta); },
                 [](const gen::IidNormal& p) {
                   if (!(p.sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
                 },
                 [](const gen::Ar1& p) {
                   if (!(std::abs(p.rho) < 1.0)) throw std::invalid_argument("|rho| must be < 1");
                   if (!(p.sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
                 },
                 [](const gen::BlockMixture&) {},
             },
             spec.params);
}

Path generate(const GeneratorSpec& spec) {
  validate(spec);
  const std::size_t len = spec.length;
  std::vector<double> x(len);
  Rng rng(spec.seed);

  std::visit(
      overloaded{
          [&](const gen::Constant& p) { std::fill(x.begin(), x.end(), p.c); },
          [&](const gen::Monotone& p) {
            for (std::size_t n = 0; n < len; ++n) x[n] = p.slope * static_cast<double>(n);
          },
          [&](const gen::UniquePeak& p) {
            for (auto& v : x) {
              do {
                v = rng.normal();
              } while (!(std::abs(v) < 4.0));
            }
            x[len / 2] = p.peak_height;
          },
          [&](const gen::Sine& p) {
            for (std::size_t n = 0; n < len; ++n) {
              x[n] = std::sin(static_cast<double>(n) * p.theta + p.phi0);
            }
          },
          [&](const gen::RandomPhaseSine& p) {
            const double phi0 = 2.0 * std::numbers::pi * rng.uniform();
            for (std::size_t n = 0; n < len; ++n) {
              x[n] = std::sin(static_cast<double>(n) * p.theta + phi0);
            }
          },
          [&](const gen::IidNormal& p) {
            for (auto& v : x) v = p.mu + p.sigma * rng.normal();
          },
          [&](const gen::Ar1& p) {
            x[0] = p.sigma / std::sqrt(1.0 - p.rho * p.rho) * rng.normal();
            for (std::size_t n = 1; n < len; ++n) x[n] = p.rho * x[n - 1] + p.sigma * rng.normal();
          },
          [&](const gen::BlockMixture& p) {
            std::size_t n = 0;
            for (std::size_t m = 1; n < len; ++m) {
              for (std::size_t i = 0; i < m && n < len; ++i) x[n++] = p.level_a;
              for (std::size_t i = 0; i < m && n < len; ++i) x[n++] = p.level_b;
            }
            for (auto& v : x) v += rng.normal();
          },
      },
      spec.params);
  return Path(std::move(x));
}

GeneratorSpec parse_generator_spec(std::string_view text, std::size_t default_length,
                                   std::uint64_t default_seed) {
  auto s = trim(text);
  if (s.starts_with("generate:")) s.remove_prefix(9);
  const auto open = s.find('(');
  const auto close = s.find(')');
  const auto kind_name = trim(open == std::string_view::npos ? s.substr(0, s.find(',')) : s.substr(0, open));

  std::size_t kind_index = kinds().size();
  for (std::size_t i = 0; i < kinds().size(); ++i) {
    if (kinds()[i].name == kind_name) kind_index = i;
  }
  if (kind_index == kinds().size()) {
    throw std::invalid_argument("unknown generator kind '" + std::string(kind_name) + "'");
  }
  const auto& info = kinds()[kind_index];

  std::string_view args;
  std::string_view rest;
  if (open != std::string_view::npos) {
    if (close == std::string_view::npos || close < open) {
      throw std::invalid_argument("unbalanced parentheses in generator spec");
    }
    args = s.substr(open + 1, close - open - 1);
    rest = s.substr(close + 1);
  } else {
    const auto comma = s.find(',');
    rest = comma == std::string_view::npos ? std::string_view{} : s.substr(comma);
  }

  // Defaults come from the default-constructed parameter structs.
  std::vector<double> values = std::visit(
      [](const auto& p) { return param_values(GeneratorParams{std::decay_t<decltype(p)>{}}); },
      make_params(kind_index, {0.0, 0.0}));

  std::size_t positional = 0;
  for (auto arg : split(args, ',')) {
    const auto eq = arg.find('=');
    if (eq == std::string_view::npos) {
      if (positional >= info.params.size()) {
        throw std::invalid_argument("too many arguments for generator '" + std::string(info.name) + "'");
      }
      values[positional++] = to_double(arg);
      continue;
    }
    const auto key = trim(arg.substr(0, eq));
    std::size_t slot = info.params.size();
    for (std::size_t i = 0; i < info.params.size(); ++i) {
      if (info.params[i] == key) slot = i;
    }
    if (slot == info.params.size()) {
      throw std::invalid_argument("unknown parameter '" + std::string(key) + "' for generator '" +
                                  std::string(info.name) + "'");
    }
    values[slot] = to_double(trim(arg.substr(eq + 1)));
  }

  GeneratorSpec spec{make_params(kind_index, values), default_length, default_seed};
  for (auto item : split(rest, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) {
      throw std::invalid_argument("expected key=value after generator, got '" + std::string(item) + "'");
    }
    const auto key = trim(item.substr(0, eq));
    const auto value = trim(item.substr(eq + 1));
    if (key == "L" || key == "length") {
      spec.length = static_cast<std::size_t>(to_u64(value));
    } else if (key == "seed") {
      spec.seed = to_u64(value);
    } else {
      throw std::invalid_argument("unknown generator option '" + std::string(key) + "'");
    }
  }
  validate(spec);
  return spec;
}

std::string format_generator(const GeneratorParams& params) {
  const auto& info = kinds()[params.index()];
  const auto values = param_values(params);
  std::string out(info.name);
  out += '(';
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ',';
    out += info.params[i];
    out += '=';
    out += format_number(values[i]);
  }
  out += ')';
  return out;
}

ExpectedProfile expected_profile(const GeneratorSpec& spec) {
  return std::visit(
      overloaded{
          [](const gen::Constant&) {
            return ExpectedProfile{true, true, true, true, std::nullopt,
                                   "every pattern matches always or never"};
          },
          [](const gen::Monotone&) {
            return ExpectedProfile{false, false, false, std::nullopt, std::nullopt,
                                   "prefix fraction below K is min(K, n)/n; bounded cells are "
                                   "visited once"};
          },
          [](const gen::UniquePeak&) {
            return ExpectedProfile{false, false, true, std::nullopt, std::nullopt,
                                   "the peak cell has exactly one occurrence"};
          },
          [](const gen::Sine&) {
            return ExpectedProfile{true, true, true, true, std::nullopt,
                                   "periodic or equidistributed orbit"};
          },
          [](const gen::RandomPhaseSine&) {
            return ExpectedProfile{true, true, true, true, std::nullopt, "stationary ergodic orbit"};
          },
          [](const gen::IidNormal&) {
            return ExpectedProfile{true, true, true, true, std::nullopt, "stationary ergodic"};
          },
          [](const gen::Ar1&) {
            return ExpectedProfile{true, true, true, true, std::nullopt, "stationary ergodic"};
          },
          [](const gen::BlockMixture&) {
            return ExpectedProfile{false, true, true, false, 0.4,
                                   "contractions aligned with level_b blocks double the "
                                   "level_b cell density"};
          },
      },
      spec.params);
}

}  // namespace pathstat
