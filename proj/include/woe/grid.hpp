#pragma once

#include <Eigen/Dense>

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace woe {

/// Rectilinear grid of scalar node values, row-major (last axis fastest).
struct GridField {
  Eigen::VectorXd origin;
  Eigen::VectorXd spacing;
  std::vector<Eigen::Index> shape;
  Eigen::VectorXd values;

  Eigen::Index dim() const { return origin.size(); }
  Eigen::Index node_count() const;
  Eigen::Index flat_index(const std::vector<Eigen::Index>& idx) const;
  double upper(Eigen::Index axis) const {
    return origin[axis] + spacing[axis] * double(shape[axis] - 1);
  }

  /// Throws unless spacing > 0 per axis, every axis has >= 2 nodes and the
  /// value array length matches the shape product.
  void check() const;
};

/// Multilinear interpolation; exact on nodes and for affine node data.
/// Throws std::domain_error outside the grid bounds.
double interpolate(const GridField& field, const Eigen::Ref<const Eigen::VectorXd>& x);

/// Rasterizes a predicate into a 0/1 mask field (1 = inside).
GridField make_mask(const Eigen::VectorXd& origin, const Eigen::VectorXd& spacing,
                    const std::vector<Eigen::Index>& shape,
                    const std::function<bool(const Eigen::VectorXd&)>& inside);

/// Samples a scalar function onto grid nodes.
GridField sample_field(const Eigen::VectorXd& origin, const Eigen::VectorXd& spacing,
                       const std::vector<Eigen::Index>& shape,
                       const std::function<double(const Eigen::VectorXd&)>& f);

// EIKO v1 text format: one header line
//   EIKO v1 D=<dim> shape=<n1,...> origin=<o1,...> spacing=<s1,...>
// followed by node values in row-major order, printed with enough digits
// that re-reading reproduces the doubles bit-exactly.
void write_eiko(const GridField& field, std::ostream& out);
void write_eiko_file(const GridField& field, const std::string& path);
GridField read_eiko(std::istream& in);
GridField read_eiko_file(const std::string& path);

}  // namespace woe
