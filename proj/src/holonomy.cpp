#include "sqm/holonomy.hpp"

#include "sqm/errors.hpp"

#include <cmath>

namespace sqm {

namespace {

constexpr double kOverlapFloor = 1e-14;

bool same_ray(const Vector& a, const Vector& b) {
  return a.size() == b.size() && std::abs(std::abs(a.dot(b)) - 1.0) <= 1e-10;
}

void check_chain(std::span<const Vector> s) {
  if (s.empty()) throw ValidationError("curve: no samples");
  for (const auto& v : s)
    if (v.size() != s.front().size() || std::abs(v.norm() - 1.0) > 1e-12)
      throw ValidationError("curve: samples must be unit vectors of one dimension");
  for (std::size_t i = 0; i + 1 < s.size(); ++i)
    if (std::abs(s[i].dot(s[i + 1])) < kOverlapFloor)
      throw DegenerateConfigurationError("curve: vanishing overlap between consecutive samples");
}

Vec3 slerp(const Vec3& a, const Vec3& b, double t) {
  const double om = std::acos(std::clamp(a.dot(b), -1.0, 1.0));
  if (om < 1e-15) return a;
  return ((std::sin((1 - t) * om) * a + std::sin(t * om) * b) / std::sin(om)).normalized();
}

}  // namespace

Curve Curve::from_vectors(std::vector<Vector> samples, bool closed) {
  check_chain(samples);
  if (closed && !same_ray(samples.front(), samples.back()))
    throw ValidationError("curve: closed curve must end on its starting ray");
  return Curve{std::move(samples), closed};
}

Curve Curve::sphere_polygon(std::size_t dim, std::span<const Vec3> vertices, std::size_t n, bool closed) {
  if (vertices.size() < 2 || n == 0) throw ValidationError("sphere_polygon: need two vertices and n >= 1");
  std::vector<Vec3> vs(vertices.begin(), vertices.end());
  if (closed) vs.push_back(vs.front());
  std::vector<Vector> out{spin_coherent(dim, vs.front().normalized())};
  for (std::size_t e = 0; e + 1 < vs.size(); ++e) {
    const Vec3 a = vs[e].normalized(), b = vs[e + 1].normalized();
    if (a.dot(b) < -1.0 + 1e-12) throw DegenerateConfigurationError("sphere_polygon: antipodal edge");
    for (std::size_t i = 1; i <= n; ++i)
      out.push_back(spin_coherent(dim, slerp(a, b, static_cast<double>(i) / static_cast<double>(n))));
  }
  return from_vectors(std::move(out), closed);
}

Curve Curve::reversed() const { return Curve{std::vector<Vector>(samples.rbegin(), samples.rend()), closed}; }

cplx bargmann_product(std::span<const Vector> samples) {
  check_chain(samples);
  cplx b = 1.0;
  for (std::size_t i = 0; i + 1 < samples.size(); ++i) b *= samples[i].dot(samples[i + 1]);
  return b;
}

Operator path_operator(std::span<const Vector> samples) {
  const cplx b = bargmann_product(samples);
  return Operator(b * samples.front() * samples.back().adjoint());
}

cplx holonomy(const Curve& c) {
  if (!c.closed) throw ValidationError("holonomy: curve is not closed");
  std::vector<Vector> loop(c.samples.begin(), c.samples.end());
  loop.back() = loop.front();
  const cplx b = bargmann_product(loop);
  return std::conj(b / std::abs(b));
}

GreatCircle GreatCircle::between(const Vector& from, const Vector& to) {
  if (from.size() != to.size()) throw ValidationError("GreatCircle: dimension mismatch");
  const cplx a = from.dot(to);
  if (std::abs(a) < kOverlapFloor) throw DegenerateConfigurationError("GreatCircle: orthogonal endpoints");
  const Vector w = to * (std::conj(a) / std::abs(a));
  GreatCircle g;
  g.v = from;
  g.eps = std::acos(std::clamp(std::abs(a), 0.0, 1.0));
  const Vector perp = w - std::abs(a) * from;
  g.u = perp.norm() > 1e-15 ? Vector(perp / perp.norm()) : Vector(Vector::Zero(from.size()));
  return g;
}

Vector GreatCircle::at(double t) const { return v * std::cos(eps * t) + u * std::sin(eps * t); }

std::vector<Vector> GreatCircle::samples(std::size_t n) const {
  if (n == 0) throw ValidationError("GreatCircle::samples: n must be positive");
  std::vector<Vector> s;
  s.reserve(n + 1);
  for (std::size_t i = 0; i <= n; ++i) s.push_back(at(static_cast<double>(i) / static_cast<double>(n)));
  return s;
}

Operator GreatCircle::limit_operator() const { return Operator(at(0.0) * at(1.0).adjoint()); }

Operator GreatCircle::discrete_operator(std::size_t n) const {
  return Operator(std::pow(std::cos(eps / static_cast<double>(n)), static_cast<double>(n)) * at(0.0) *
                  at(1.0).adjoint());
}

GeodesicTriangle geodesic_triangle(const Vector& w1, const Vector& w2, const Vector& w3, std::size_t n) {
  const GreatCircle c1 = GreatCircle::between(w1, w2);
  const Vector v2 = c1.at(1.0);
  const GreatCircle c2 = GreatCircle::between(v2, w3);
  const Vector v3 = c2.at(1.0);
  const GreatCircle c3 = GreatCircle::between(v3, w1);
  std::vector<Vector> s = c1.samples(n);
  for (const auto* c : {&c2, &c3}) {
    auto part = c->samples(n);
    s.insert(s.end(), part.begin() + 1, part.end());
  }
  const cplx o31 = v3.dot(w1);
  return {Curve::from_vectors(std::move(s), true), std::cos(c3.eps) / o31};
}

double solid_angle(const Vec3& n1, const Vec3& n2, const Vec3& n3) {
  return 2.0 * std::atan2(n1.dot(n2.cross(n3)), 1.0 + n1.dot(n2) + n2.dot(n3) + n3.dot(n1));
}

RegionInterference path_interference(const CoherentFamily& f, std::span<const Region> s_path,
                                     std::span<const Region> t_path) {
  if (s_path.size() < 2 || s_path.size() != t_path.size())
    throw ValidationError("path_interference: paths need equal length >= 2");
  if (s_path.front().resolve(f) != t_path.front().resolve(f) || s_path.back().resolve(f) != t_path.back().resolve(f))
    throw ValidationError("path_interference: paths must share their endpoint regions");
  const Operator a = povm_element(f, s_path.front());
  Matrix x = a.matrix(), y = a.matrix();
  for (std::size_t i = 1; i < s_path.size(); ++i) {
    x = x * f.element(s_path[i].resolve(f)).matrix();
    y = y * f.element(t_path[i].resolve(f)).matrix();
  }
  const double c1 = a.matrix().squaredNorm();
  if (!(c1 > 1e-300)) throw ConditioningOnNullError("path_interference: conditioning operator vanishes");
  RegionInterference r{};
  r.p_s = x.squaredNorm() / c1;
  r.p_t = y.squaredNorm() / c1;
  r.cross = (x.adjoint() * y).trace().real() / c1;
  r.probability = 0.25 * (x + y).squaredNorm() / c1;
  return r;
}

CurveInterference curve_interference(const Curve& c1, const Curve& c2) {
  if (c1.samples.empty() || c2.samples.empty()) throw ValidationError("curve_interference: empty curve");
  if (!same_ray(c1.samples.front(), c2.samples.front()) || !same_ray(c1.samples.back(), c2.samples.back()))
    throw ValidationError("curve_interference: curves must share endpoints");
  std::vector<Vector> loop = c1.samples;
  for (auto it = c2.samples.rbegin() + 1; it != c2.samples.rend(); ++it) loop.push_back(*it);
  CurveInterference r{};
  r.hol = holonomy(Curve::from_vectors(std::move(loop), true));
  r.rho2 = 2.0 + 2.0 * r.hol.real();
  r.probability = 0.25 * r.rho2;
  const Matrix s = path_operator(c1.samples).matrix() + path_operator(c2.samples).matrix();
  r.direct = 0.25 * s.squaredNorm();
  return r;
}

}  // namespace sqm
