#include "boxtherm/locate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "boxtherm/errors.hpp"

namespace boxtherm {

namespace {

std::array<double, 3> barycentric(const Vec2& a, const Vec2& b, const Vec2& c,
                                  const Vec2& x) {
  const double area = signed_area(a, b, c);
  return {signed_area(x, b, c) / area, signed_area(a, x, c) / area,
          signed_area(a, b, x) / area};
}

} // namespace

TriangleLocator::TriangleLocator(const Mesh& mesh) : mesh_(mesh) {
  lo_ = hi_ = mesh.point(0);
  for (const Vec2& p : mesh.vertices) {
    lo_.x = std::min(lo_.x, p.x);
    lo_.y = std::min(lo_.y, p.y);
    hi_.x = std::max(hi_.x, p.x);
    hi_.y = std::max(hi_.y, p.y);
  }
  const int target = std::max(1, static_cast<int>(
                                     std::sqrt(mesh.triangle_count() / 2.0)));
  nx_ = ny_ = target;
  cell_ = std::max((hi_.x - lo_.x) / nx_, (hi_.y - lo_.y) / ny_);
  if (cell_ <= 0.0) cell_ = 1.0;
  bins_.assign(static_cast<size_t>(nx_) * static_cast<size_t>(ny_), {});

  auto bin_range = [&](double lo, double hi, double origin, int count) {
    int b0 = static_cast<int>(std::floor((lo - origin) / cell_));
    int b1 = static_cast<int>(std::floor((hi - origin) / cell_));
    return std::pair<int, int>{std::clamp(b0, 0, count - 1),
                               std::clamp(b1, 0, count - 1)};
  };
  for (int t = 0; t < mesh.triangle_count(); ++t) {
    const auto& tri = mesh.triangles[static_cast<size_t>(t)];
    Vec2 tlo = mesh.point(tri[0]), thi = tlo;
    for (int c = 1; c < 3; ++c) {
      const Vec2 p = mesh.point(tri[static_cast<size_t>(c)]);
      tlo.x = std::min(tlo.x, p.x);
      tlo.y = std::min(tlo.y, p.y);
      thi.x = std::max(thi.x, p.x);
      thi.y = std::max(thi.y, p.y);
    }
    const auto [ix0, ix1] = bin_range(tlo.x, thi.x, lo_.x, nx_);
    const auto [iy0, iy1] = bin_range(tlo.y, thi.y, lo_.y, ny_);
    for (int iy = iy0; iy <= iy1; ++iy)
      for (int ix = ix0; ix <= ix1; ++ix)
        bins_[static_cast<size_t>(iy) * static_cast<size_t>(nx_) +
              static_cast<size_t>(ix)]
            .push_back(t);
  }
}

int TriangleLocator::locate(Vec2 x, std::array<double, 3>* bary) const {
  const int ix = std::clamp(
      static_cast<int>(std::floor((x.x - lo_.x) / cell_)), 0, nx_ - 1);
  const int iy = std::clamp(
      static_cast<int>(std::floor((x.y - lo_.y) / cell_)), 0, ny_ - 1);
  const auto& candidates =
      bins_[static_cast<size_t>(iy) * static_cast<size_t>(nx_) +
            static_cast<size_t>(ix)];

  int best = -1;
  double best_min = -std::numeric_limits<double>::max();
  std::array<double, 3> best_bary{};
  auto consider = [&](int t) {
    const auto& tri = mesh_.triangles[static_cast<size_t>(t)];
    const auto b = barycentric(mesh_.point(tri[0]), mesh_.point(tri[1]),
                               mesh_.point(tri[2]), x);
    const double m = std::min({b[0], b[1], b[2]});
    if (m > best_min) {
      best_min = m;
      best = t;
      best_bary = b;
    }
  };
  for (int t : candidates) consider(t);
  if (best_min < -1e-12) {
    // Bin missed (point on a bin boundary or outside): full scan.
    for (int t = 0; t < mesh_.triangle_count(); ++t) consider(t);
  }
  if (best < 0 || best_min < -1e-9)
    throw Error("locate: point outside the mesh");
  if (bary) *bary = best_bary;
  return best;
}

double TriangleLocator::eval(const NodalField& v, Vec2 x) const {
  require_on_mesh(v, mesh_, "TriangleLocator::eval");
  std::array<double, 3> b{};
  const int t = locate(x, &b);
  const auto& tri = mesh_.triangles[static_cast<size_t>(t)];
  return b[0] * v[tri[0]] + b[1] * v[tri[1]] + b[2] * v[tri[2]];
}

NodalField inject_field(const Mesh& source, const NodalField& v,
                        const Mesh& target) {
  require_on_mesh(v, source, "inject_field");
  const TriangleLocator locator(source);
  NodalField out = make_field(target);
  for (int p = 0; p < target.vertex_count(); ++p)
    out[p] = locator.eval(v, target.point(p));
  return out;
}

} // namespace boxtherm
