#pragma once

#include <Eigen/Core>

namespace shiftreal::fft {

// Unnormalized transforms in standard DFT order: out_j = sum_k in_k exp(-+2 pi i jk/n).
Eigen::VectorXcd forward(const Eigen::VectorXcd& in);
Eigen::VectorXcd backward(const Eigen::VectorXcd& in);

}  // namespace shiftreal::fft
