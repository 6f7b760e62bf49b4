#include "advdiff/mesh.hpp"

#include <algorithm>
#include <cmath>

namespace advdiff {

Mesh1D::Mesh1D(Eigen::VectorXd nodes) : nodes_(std::move(nodes)) {
  if (nodes_.size() < 2) {
    throw Error(ErrorCode::InvalidArgument, "a mesh needs at least 2 nodes");
  }
  for (Eigen::Index j = 0; j + 1 < nodes_.size(); ++j) {
    if (!(nodes_(j + 1) > nodes_(j))) {
      throw Error(ErrorCode::InvalidArgument,
                  "node coordinates must be strictly increasing");
    }
  }
  const double mean = (x_hi() - x_lo()) / static_cast<double>(n_elements());
  uniform_ = true;
  for (Eigen::Index e = 0; e < n_elements(); ++e) {
    if (std::abs(nodes_(e + 1) - nodes_(e) - mean) > 1e-14 * mean) {
      uniform_ = false;
      break;
    }
  }
}

Eigen::Index Mesh1D::element_of(double x) const {
  const double* begin = nodes_.data();
  const double* end = begin + nodes_.size();
  const auto it = std::upper_bound(begin, end, x);
  Eigen::Index e = static_cast<Eigen::Index>(it - begin) - 1;
  return std::clamp<Eigen::Index>(e, 0, n_elements() - 1);
}

Mesh1D build_uniform(double x_lo, double x_hi, Eigen::Index n_elements) {
  if (!(x_lo < x_hi)) {
    throw Error(ErrorCode::EmptyDomain, "x_lo must be less than x_hi");
  }
  if (n_elements < 2) {
    throw Error(ErrorCode::TooFewElements,
                "need at least 2 elements (one interior node)");
  }
  Eigen::VectorXd nodes(n_elements + 1);
  const double h = (x_hi - x_lo) / static_cast<double>(n_elements);
  for (Eigen::Index j = 0; j <= n_elements; ++j) {
    nodes(j) = x_lo + static_cast<double>(j) * h;
  }
  nodes(n_elements) = x_hi;
  return Mesh1D(std::move(nodes));
}

std::pair<double, double> element_span(const Mesh1D& mesh, Eigen::Index e) {
  if (e < 0 || e >= mesh.n_elements()) {
    throw Error(ErrorCode::IndexOutOfRange,
                "element index " + std::to_string(e) + " out of range");
  }
  return {mesh.nodes()(e), mesh.nodes()(e + 1) - mesh.nodes()(e)};
}

}  // namespace advdiff
