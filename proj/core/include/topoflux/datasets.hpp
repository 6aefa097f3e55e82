#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "topoflux/embedders.hpp"

namespace topoflux {

/// Unit-circle points with ground-truth angles, uniform coordinate noise in
/// [-noise_half_width, noise_half_width] on every ambient dimension, and pure
/// noise beyond the first two coordinates.
struct SyntheticCycle {
  Eigen::MatrixXd points;      // n x ambient_dim
  std::vector<double> angles;  // ground-truth angle per point
};
SyntheticCycle generate_synthetic_cycle(int n = 50, int ambient_dim = 500,
                                        double noise_half_width = 0.45, std::uint64_t seed = 0);

/// Isotropic standard Gaussian cloud.
Eigen::MatrixXd generate_gaussian_cloud(int n, int d, std::uint64_t seed);

/// Points on a circle of radius 1 with Gaussian radial noise.
struct NoisyCircle {
  Eigen::MatrixXd points;  // n x 2
  std::vector<double> angles;
};
NoisyCircle generate_noisy_circle(int n, double sigma, std::uint64_t seed);

/// Comma-separated decimals, one point per row; a non-numeric first row is
/// treated as a header.  Optionally column-centers the result.
Eigen::MatrixXd load_point_csv(const std::string& path, bool center = false);

/// Whitespace-separated integer pairs, one edge per line, '#' comments.
GraphData load_edge_list(const std::string& path);

/// Writes one point per row with 17 significant digits, so a reload is
/// bitwise identical.
void write_point_csv(const std::string& path, const Eigen::MatrixXd& points);

}  // namespace topoflux
