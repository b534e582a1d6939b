#include "woe/grid.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace woe {

Eigen::Index GridField::node_count() const {
  Eigen::Index n = 1;
  for (Eigen::Index s : shape) n *= s;
  return n;
}

Eigen::Index GridField::flat_index(const std::vector<Eigen::Index>& idx) const {
  Eigen::Index flat = 0;
  for (std::size_t a = 0; a < shape.size(); ++a) flat = flat * shape[a] + idx[a];
  return flat;
}

void GridField::check() const {
  const auto d = dim();
  if (d < 1 || spacing.size() != d || Eigen::Index(shape.size()) != d)
    throw std::invalid_argument("GridField: inconsistent dimensions");
  for (Eigen::Index a = 0; a < d; ++a) {
    if (spacing[a] <= 0.0) throw std::invalid_argument("GridField: spacing must be positive");
    if (shape[a] < 2) throw std::invalid_argument("GridField: need at least 2 nodes per axis");
  }
  if (values.size() != node_count())
    throw std::invalid_argument("GridField: value count does not match shape");
}

double interpolate(const GridField& field, const Eigen::Ref<const Eigen::VectorXd>& x) {
  const Eigen::Index d = field.dim();
  if (x.size() != d) throw std::invalid_argument("interpolate: dimension mismatch");

  std::vector<Eigen::Index> base(d);
  Eigen::VectorXd frac(d);
  for (Eigen::Index a = 0; a < d; ++a) {
    const double u = (x[a] - field.origin[a]) / field.spacing[a];
    const double top = double(field.shape[a] - 1);
    const double slack = 1e-9 * std::max(1.0, top);
    if (u < -slack || u > top + slack) throw std::domain_error("interpolate: point outside grid");
    double cell = std::floor(u);
    cell = std::min(std::max(cell, 0.0), top - 1.0);
    base[a] = Eigen::Index(cell);
    frac[a] = u - cell;
  }

  double acc = 0.0;
  std::vector<Eigen::Index> idx(d);
  const Eigen::Index corners = Eigen::Index(1) << d;
  for (Eigen::Index corner = 0; corner < corners; ++corner) {
    double w = 1.0;
    for (Eigen::Index a = 0; a < d; ++a) {
      const bool hi = (corner >> a) & 1;
      idx[a] = base[a] + (hi ? 1 : 0);
      w *= hi ? frac[a] : 1.0 - frac[a];
    }
    if (w != 0.0) acc += w * field.values[field.flat_index(idx)];
  }
  return acc;
}

namespace {

template <class Fill>
GridField build_grid(const Eigen::VectorXd& origin, const Eigen::VectorXd& spacing,
                     const std::vector<Eigen::Index>& shape, Fill&& fill) {
  GridField field{origin, spacing, shape, {}};
  field.values.resize(field.node_count());
  field.check();
  const Eigen::Index d = field.dim();
  std::vector<Eigen::Index> idx(d, 0);
  Eigen::VectorXd point(d);
  for (Eigen::Index flat = 0; flat < field.values.size(); ++flat) {
    for (Eigen::Index a = 0; a < d; ++a) point[a] = origin[a] + spacing[a] * double(idx[a]);
    field.values[flat] = fill(point);
    for (Eigen::Index a = d - 1; a >= 0; --a) {
      if (++idx[a] < shape[a]) break;
      idx[a] = 0;
    }
  }
  return field;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

GridField make_mask(const Eigen::VectorXd& origin, const Eigen::VectorXd& spacing,
                    const std::vector<Eigen::Index>& shape,
                    const std::function<bool(const Eigen::VectorXd&)>& inside) {
  return build_grid(origin, spacing, shape,
                    [&](const Eigen::VectorXd& p) { return inside(p) ? 1.0 : 0.0; });
}

GridField sample_field(const Eigen::VectorXd& origin, const Eigen::VectorXd& spacing,
                       const std::vector<Eigen::Index>& shape,
                       const std::function<double(const Eigen::VectorXd&)>& f) {
  return build_grid(origin, spacing, shape, f);
}

void write_eiko(const GridField& field, std::ostream& out) {
  field.check();
  out << "EIKO v1 D=" << field.dim();
  out << " shape=";
  for (std::size_t a = 0; a < field.shape.size(); ++a)
    out << (a ? "," : "") << field.shape[a];
  out << " origin=";
  for (Eigen::Index a = 0; a < field.dim(); ++a)
    out << (a ? "," : "") << format_double(field.origin[a]);
  out << " spacing=";
  for (Eigen::Index a = 0; a < field.dim(); ++a)
    out << (a ? "," : "") << format_double(field.spacing[a]);
  out << "\n";
  for (Eigen::Index i = 0; i < field.values.size(); ++i)
    out << format_double(field.values[i]) << "\n";
}

void write_eiko_file(const GridField& field, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_eiko: cannot open " + path);
  write_eiko(field, out);
  if (!out) throw std::runtime_error("write_eiko: write failed for " + path);
}

GridField read_eiko(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw std::runtime_error("read_eiko: missing header");
  std::istringstream hs(header);
  std::string magic, version, dtok, stok, otok, ptok;
  hs >> magic >> version >> dtok >> stok >> otok >> ptok;
  if (magic != "EIKO" || version != "v1" || dtok.rfind("D=", 0) != 0 ||
      stok.rfind("shape=", 0) != 0 || otok.rfind("origin=", 0) != 0 ||
      ptok.rfind("spacing=", 0) != 0)
    throw std::runtime_error("read_eiko: malformed header");

  GridField field;
  const Eigen::Index d = std::stoll(dtok.substr(2));
  if (d < 1) throw std::runtime_error("read_eiko: bad dimension");
  auto shape_parts = split(stok.substr(6), ',');
  auto origin_parts = split(otok.substr(7), ',');
  auto spacing_parts = split(ptok.substr(8), ',');
  if (Eigen::Index(shape_parts.size()) != d || Eigen::Index(origin_parts.size()) != d ||
      Eigen::Index(spacing_parts.size()) != d)
    throw std::runtime_error("read_eiko: header list lengths disagree with D");
  field.origin.resize(d);
  field.spacing.resize(d);
  field.shape.resize(d);
  for (Eigen::Index a = 0; a < d; ++a) {
    field.shape[a] = std::stoll(shape_parts[a]);
    field.origin[a] = std::stod(origin_parts[a]);
    field.spacing[a] = std::stod(spacing_parts[a]);
  }
  field.values.resize(field.node_count());
  for (Eigen::Index i = 0; i < field.values.size(); ++i)
    if (!(in >> field.values[i])) throw std::runtime_error("read_eiko: truncated value data");
  field.check();
  return field;
}

GridField read_eiko_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_eiko: cannot open " + path);
  return read_eiko(in);
}

}  // namespace woe
