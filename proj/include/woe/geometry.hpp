#pragma once

#include "woe/grid.hpp"

#include <Eigen/Dense>

#include <functional>
#include <variant>

namespace woe {

enum class BoundaryClass { Absorbing, Reflecting };

/// Boundary data at a point: signed distance (negative strictly inside, zero
/// on the boundary), outward unit normal, closest boundary point and the
/// class of the boundary portion it falls on.
struct BoundaryQuery {
  double distance = 0.0;
  Eigen::VectorXd normal;
  Eigen::VectorXd projection;
  BoundaryClass boundary_class = BoundaryClass::Absorbing;
};

struct AnalyticBall {
  Eigen::VectorXd center;
  double radius;
};

struct AnalyticBox {
  Eigen::VectorXd lo;
  Eigen::VectorXd hi;
};

/// Grid-backed domain holding a signed distance field (e.g. from
/// fmm_distance). Normals come from central differences of the field,
/// one-sided at grid edges.
struct GriddedDomain {
  GridField distance;
};

using Classifier = std::function<BoundaryClass(const Eigen::Ref<const Eigen::VectorXd>&)>;

/// Domain geometry plus the split of the boundary into absorbing and
/// reflecting portions, decided by a total predicate on boundary points.
struct BoundaryOracle {
  std::variant<AnalyticBall, AnalyticBox, GriddedDomain> shape;
  Classifier classifier;

  Eigen::Index dim() const;
  void bounding_box(Eigen::VectorXd& lo, Eigen::VectorXd& hi) const;
};

Classifier classify_all(BoundaryClass cls);
/// Absorbing where the last coordinate of the boundary point is negative.
Classifier classify_lower_hemisphere_absorbing();

BoundaryOracle make_ball_oracle(Eigen::VectorXd center, double radius, Classifier classifier);
BoundaryOracle make_box_oracle(Eigen::VectorXd lo, Eigen::VectorXd hi, Classifier classifier);
BoundaryOracle make_gridded_oracle(GridField signed_distance, Classifier classifier);

/// Allocation-free variant for hot loops; `out` buffers are resized on first
/// use and reused afterwards.
void boundary_query_into(const BoundaryOracle& oracle, const Eigen::Ref<const Eigen::VectorXd>& x,
                         BoundaryQuery& out);

BoundaryQuery boundary_query(const BoundaryOracle& oracle,
                             const Eigen::Ref<const Eigen::VectorXd>& x);

}  // namespace woe
