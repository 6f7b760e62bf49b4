#pragma once

#include <Eigen/Core>
#include <utility>

#include "advdiff/errors.hpp"

namespace advdiff {

// 1D mesh of linear elements: strictly increasing node coordinates.
// Immutable after construction.
class Mesh1D {
 public:
  Mesh1D() = default;
  explicit Mesh1D(Eigen::VectorXd nodes);

  const Eigen::VectorXd& nodes() const { return nodes_; }
  Eigen::Index n_nodes() const { return nodes_.size(); }
  Eigen::Index n_elements() const { return nodes_.size() - 1; }
  double x_lo() const { return nodes_(0); }
  double x_hi() const { return nodes_(nodes_.size() - 1); }
  bool empty() const { return nodes_.size() == 0; }

  // True iff all spacings agree with the mean spacing to 1e-14 relative.
  bool uniform() const { return uniform_; }

  // Index of the element containing x, clamped to [0, n_elements-1].
  Eigen::Index element_of(double x) const;

 private:
  Eigen::VectorXd nodes_;
  bool uniform_ = false;
};

// n_elements >= 2 equal elements on [x_lo, x_hi]; endpoints are exact.
Mesh1D build_uniform(double x_lo, double x_hi, Eigen::Index n_elements);

// (left coordinate, width) of element e.
std::pair<double, double> element_span(const Mesh1D& mesh, Eigen::Index e);

}  // namespace advdiff
