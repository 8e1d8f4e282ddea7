#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "vnd/dataset.hpp"

namespace vnd {

enum class BenchmarkKind { ThreeVarMin, TwoVarXor };

/// grid: one uniformly drawn point inside each cell of a regular grid
///       (stratified sampling; samples must be a cube/square).
/// lattice: the cell corners i/(n-1) themselves, no randomness.
/// uniformRandom: independent uniform draws.
enum class Sampling { Grid, Lattice, UniformRandom };

struct BenchmarkSpec {
  BenchmarkKind kind = BenchmarkKind::ThreeVarMin;
  std::size_t samples = 27000;
  Sampling sampling = Sampling::Grid;
  std::uint64_t seed = 0;

  static BenchmarkSpec threeVar(std::uint64_t seed = 0) { return {BenchmarkKind::ThreeVarMin, 27000, Sampling::Grid, seed}; }
  static BenchmarkSpec twoVarXor(std::uint64_t seed = 0) { return {BenchmarkKind::TwoVarXor, 10000, Sampling::Grid, seed}; }
};

/// min(|a-b|, |b-c|, |c-a|); peaks at 0.5 on the permutations of (0, 0.5, 1).
double three_var_target(double a, double b, double c);
/// max(A(1-B), B(1-A)); high when exactly one input is high.
double two_var_xor_target(double a, double b);

/// High/low border of each benchmark in raw target units.
inline constexpr double kThreeVarThreshold = 0.25;
inline constexpr double kTwoVarXorThreshold = 0.5;

Dataset gen_three_var(const BenchmarkSpec& spec);
Dataset gen_two_var_xor(const BenchmarkSpec& spec);
Dataset generate(const BenchmarkSpec& spec);

/// Input-space locations of the target maxima (normalized inputs).
std::vector<std::vector<double>> benchmark_maxima(BenchmarkKind kind);

std::string to_string(BenchmarkKind kind);
std::string to_string(Sampling sampling);
BenchmarkKind parse_benchmark_kind(const std::string& text);
Sampling parse_sampling(const std::string& text);

}  // namespace vnd
