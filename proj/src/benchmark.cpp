#include "vnd/benchmark.hpp"

#include <algorithm>
#include <cmath>

#include "vnd/error.hpp"
#include "vnd/random.hpp"

namespace vnd {
namespace {

std::size_t integer_root(std::size_t value, int degree) {
  auto root = static_cast<std::size_t>(std::llround(std::pow(static_cast<double>(value), 1.0 / degree)));
  for (std::size_t r : {root - 1, root, root + 1}) {
    std::size_t p = 1;
    for (int i = 0; i < degree; ++i) p *= r;
    if (p == value) return r;
  }
  return 0;
}

// Unit-cube points in row-major order, `dims` coordinates each.
std::vector<double> sample_points(const BenchmarkSpec& spec, int dims) {
  if (spec.samples < 8) throw Error(ErrorCode::BadSampleCount, "benchmarks need at least 8 samples");
  Rng rng(spec.seed);
  std::vector<double> points;
  points.reserve(spec.samples * static_cast<std::size_t>(dims));
  if (spec.sampling == Sampling::UniformRandom) {
    for (std::size_t i = 0; i < spec.samples * static_cast<std::size_t>(dims); ++i) points.push_back(rng.uniform());
    return points;
  }
  const std::size_t side = integer_root(spec.samples, dims);
  if (side < 2) {
    throw Error(ErrorCode::BadSampleCount, std::to_string(spec.samples) + " samples do not form a " +
                                               (dims == 3 ? "cubic" : "square") + " grid");
  }
  std::vector<std::size_t> cell(static_cast<std::size_t>(dims), 0);
  for (std::size_t i = 0; i < spec.samples; ++i) {
    std::size_t rest = i;
    for (int d = dims - 1; d >= 0; --d) {
      cell[static_cast<std::size_t>(d)] = rest % side;
      rest /= side;
    }
    for (int d = 0; d < dims; ++d) {
      const double c = static_cast<double>(cell[static_cast<std::size_t>(d)]);
      if (spec.sampling == Sampling::Lattice) {
        points.push_back(c / static_cast<double>(side - 1));
      } else {
        points.push_back((c + rng.uniform()) / static_cast<double>(side));
      }
    }
  }
  return points;
}

Dataset assemble(std::vector<std::string> names, std::vector<double> inputs, std::vector<double> rawTarget,
                 double rawThreshold) {
  std::vector<VariableSpec> specs;
  for (const auto& name : names) {
    VariableSpec s;
    s.name = name;
    s.scaleMin = 0.0;
    s.scaleMax = 1.0;
    specs.push_back(std::move(s));
  }
  const auto [lo, hi] = std::minmax_element(rawTarget.begin(), rawTarget.end());
  VariableSpec target;
  target.name = "y";
  target.isTarget = true;
  target.scaleMin = *lo;
  target.scaleMax = *hi;
  target.degenerate = !(*hi > *lo);
  std::vector<double> scaled(rawTarget.size());
  std::transform(rawTarget.begin(), rawTarget.end(), scaled.begin(),
                 [&](double y) { return normalize_value(target, y); });
  const double tau = target.degenerate ? 0.5 : normalize_value(target, rawThreshold);
  specs.push_back(target);
  return Dataset(std::move(specs), std::move(names), std::move(inputs), std::move(scaled), tau);
}

}  // namespace

double three_var_target(double a, double b, double c) {
  return std::min({std::abs(a - b), std::abs(b - c), std::abs(c - a)});
}

double two_var_xor_target(double a, double b) { return std::max(a * (1.0 - b), b * (1.0 - a)); }

Dataset gen_three_var(const BenchmarkSpec& spec) {
  if (spec.kind != BenchmarkKind::ThreeVarMin) throw Error(ErrorCode::InvalidArgument, "not a three-var spec");
  auto points = sample_points(spec, 3);
  std::vector<double> y(spec.samples);
  for (std::size_t n = 0; n < spec.samples; ++n) {
    y[n] = three_var_target(points[3 * n], points[3 * n + 1], points[3 * n + 2]);
  }
  return assemble({"a", "b", "c"}, std::move(points), std::move(y), kThreeVarThreshold);
}

Dataset gen_two_var_xor(const BenchmarkSpec& spec) {
  if (spec.kind != BenchmarkKind::TwoVarXor) throw Error(ErrorCode::InvalidArgument, "not a two-var spec");
  auto points = sample_points(spec, 2);
  std::vector<double> y(spec.samples);
  for (std::size_t n = 0; n < spec.samples; ++n) y[n] = two_var_xor_target(points[2 * n], points[2 * n + 1]);
  return assemble({"A", "B"}, std::move(points), std::move(y), kTwoVarXorThreshold);
}

Dataset generate(const BenchmarkSpec& spec) {
  return spec.kind == BenchmarkKind::ThreeVarMin ? gen_three_var(spec) : gen_two_var_xor(spec);
}

std::vector<std::vector<double>> benchmark_maxima(BenchmarkKind kind) {
  if (kind == BenchmarkKind::TwoVarXor) return {{1.0, 0.0}, {0.0, 1.0}};
  std::array<double, 3> p{0.0, 0.5, 1.0};
  std::vector<std::vector<double>> out;
  do {
    out.push_back({p[0], p[1], p[2]});
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

std::string to_string(BenchmarkKind kind) { return kind == BenchmarkKind::ThreeVarMin ? "three-var" : "xor2"; }

std::string to_string(Sampling sampling) {
  switch (sampling) {
    case Sampling::Grid: return "grid";
    case Sampling::Lattice: return "lattice";
    case Sampling::UniformRandom: return "uniform";
  }
  return "grid";
}

BenchmarkKind parse_benchmark_kind(const std::string& text) {
  if (text == "three-var") return BenchmarkKind::ThreeVarMin;
  if (text == "xor2") return BenchmarkKind::TwoVarXor;
  throw Error(ErrorCode::InvalidArgument, "unknown benchmark '" + text + "'");
}

Sampling parse_sampling(const std::string& text) {
  if (text == "grid") return Sampling::Grid;
  if (text == "lattice") return Sampling::Lattice;
  if (text == "uniform") return Sampling::UniformRandom;
  throw Error(ErrorCode::InvalidArgument, "unknown sampling '" + text + "'");
}

}  // namespace vnd
