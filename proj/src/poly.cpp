#include "bfs/poly.hpp"

#include <cmath>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace bfs {
namespace {

double ipow(double x, int p) {
  double r = 1.0;
  for (int k = 0; k < p; ++k) r *= x;
  return r;
}

}  // namespace

Poly2 Poly2::monomial(int i, int j, double c) {
  if (i < 0 || j < 0) throw std::invalid_argument("Poly2: negative exponent");
  Poly2 p;
  p.nx_ = i + 1;
  p.ny_ = j + 1;
  p.c_.assign(static_cast<size_t>(p.nx_) * p.ny_, 0.0);
  p.c_[static_cast<size_t>(i) * p.ny_ + j] = c;
  return p;
}

Poly2 Poly2::quartic_bump() {
  // (1 - t^2)^2 = 1 - 2 t^2 + t^4 in each direction.
  const double f[5] = {1.0, 0.0, -2.0, 0.0, 1.0};
  Poly2 p;
  p.nx_ = p.ny_ = 5;
  p.c_.assign(25, 0.0);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) p.c_[static_cast<size_t>(i) * 5 + j] = f[i] * f[j];
  return p;
}

Poly2 Poly2::xxyy() { return monomial(2, 2, 1.0); }

Poly2 Poly2::parse(std::istream& in) {
  Poly2 p;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (auto pos = raw.find('#'); pos != std::string::npos) raw.erase(pos);
    std::istringstream ss(raw);
    int i, j;
    double c;
    if (!(ss >> i)) continue;  // blank line
    if (!(ss >> j >> c) || i < 0 || j < 0)
      throw std::invalid_argument("Poly2::parse: line " + std::to_string(line_no) +
                                  ": expected 'i j c' with i, j >= 0");
    std::string extra;
    if (ss >> extra)
      throw std::invalid_argument("Poly2::parse: line " + std::to_string(line_no) +
                                  ": trailing tokens");
    p.set_coeff(i, j, p.coeff(i, j) + c);
  }
  return p;
}

double Poly2::coeff(int i, int j) const {
  if (i < 0 || j < 0 || i >= nx_ || j >= ny_) return 0.0;
  return c_[static_cast<size_t>(i) * ny_ + j];
}

void Poly2::set_coeff(int i, int j, double c) {
  if (i < 0 || j < 0) throw std::invalid_argument("Poly2: negative exponent");
  if (i >= nx_ || j >= ny_) {
    const int nnx = std::max(nx_, i + 1);
    const int nny = std::max(ny_, j + 1);
    std::vector<double> grown(static_cast<size_t>(nnx) * nny, 0.0);
    for (int a = 0; a < nx_; ++a)
      for (int b = 0; b < ny_; ++b) grown[static_cast<size_t>(a) * nny + b] = coeff(a, b);
    c_ = std::move(grown);
    nx_ = nnx;
    ny_ = nny;
  }
  c_[static_cast<size_t>(i) * ny_ + j] = c;
}

double Poly2::operator()(double x, double y) const {
  // Horner in x of Horner-in-y row polynomials.
  double acc = 0.0;
  for (int i = nx_ - 1; i >= 0; --i) {
    double row = 0.0;
    for (int j = ny_ - 1; j >= 0; --j) row = row * y + c_[static_cast<size_t>(i) * ny_ + j];
    acc = acc * x + row;
  }
  return acc;
}

Poly2 Poly2::dx() const {
  Poly2 p;
  if (nx_ <= 1) return p;
  p.nx_ = nx_ - 1;
  p.ny_ = ny_;
  p.c_.assign(static_cast<size_t>(p.nx_) * p.ny_, 0.0);
  for (int i = 1; i < nx_; ++i)
    for (int j = 0; j < ny_; ++j)
      p.c_[static_cast<size_t>(i - 1) * ny_ + j] = i * c_[static_cast<size_t>(i) * ny_ + j];
  return p;
}

Poly2 Poly2::dy() const {
  Poly2 p;
  if (ny_ <= 1) return p;
  p.nx_ = nx_;
  p.ny_ = ny_ - 1;
  p.c_.assign(static_cast<size_t>(p.nx_) * p.ny_, 0.0);
  for (int i = 0; i < nx_; ++i)
    for (int j = 1; j < ny_; ++j)
      p.c_[static_cast<size_t>(i) * p.ny_ + (j - 1)] = j * c_[static_cast<size_t>(i) * ny_ + j];
  return p;
}

Poly2 operator+(const Poly2& a, const Poly2& b) {
  Poly2 p;
  p.nx_ = std::max(a.nx_, b.nx_);
  p.ny_ = std::max(a.ny_, b.ny_);
  if (p.nx_ == 0 || p.ny_ == 0) return Poly2();
  p.c_.assign(static_cast<size_t>(p.nx_) * p.ny_, 0.0);
  for (int i = 0; i < p.nx_; ++i)
    for (int j = 0; j < p.ny_; ++j)
      p.c_[static_cast<size_t>(i) * p.ny_ + j] = a.coeff(i, j) + b.coeff(i, j);
  return p;
}

Poly2 operator*(const Poly2& a, const Poly2& b) {
  if (a.nx_ == 0 || a.ny_ == 0 || b.nx_ == 0 || b.ny_ == 0) return Poly2();
  Poly2 p;
  p.nx_ = a.nx_ + b.nx_ - 1;
  p.ny_ = a.ny_ + b.ny_ - 1;
  p.c_.assign(static_cast<size_t>(p.nx_) * p.ny_, 0.0);
  for (int i = 0; i < a.nx_; ++i)
    for (int j = 0; j < a.ny_; ++j) {
      const double ca = a.c_[static_cast<size_t>(i) * a.ny_ + j];
      if (ca == 0.0) continue;
      for (int k = 0; k < b.nx_; ++k)
        for (int l = 0; l < b.ny_; ++l)
          p.c_[static_cast<size_t>(i + k) * p.ny_ + (j + l)] +=
              ca * b.c_[static_cast<size_t>(k) * b.ny_ + l];
    }
  return p;
}

double Poly2::integrate(const Domain& d) const {
  check_domain(d);
  double acc = 0.0;
  for (int i = 0; i < nx_; ++i) {
    const double ix = (ipow(d.xmax, i + 1) - ipow(d.xmin, i + 1)) / (i + 1);
    for (int j = 0; j < ny_; ++j) {
      const double cij = c_[static_cast<size_t>(i) * ny_ + j];
      if (cij == 0.0) continue;
      const double iy = (ipow(d.ymax, j + 1) - ipow(d.ymin, j + 1)) / (j + 1);
      acc += cij * ix * iy;
    }
  }
  return acc;
}

AnalyticField Poly2::to_analytic() const {
  AnalyticField f;
  const Poly2 self = *this;
  const Poly2 px = dx();
  const Poly2 py = dy();
  const Poly2 pxy = px.dy();
  f.value = [self](double x, double y) { return self(x, y); };
  f.dx = [px](double x, double y) { return px(x, y); };
  f.dy = [py](double x, double y) { return py(x, y); };
  f.dxy = [pxy](double x, double y) { return pxy(x, y); };
  return f;
}

IntegralValues exact_integrals(const Poly2& v, const Poly2& f, const Domain& d) {
  const Poly2 vx = v.dx(), vy = v.dy();
  const Poly2 vxx = vx.dx(), vyy = vy.dy(), vxy = vx.dy();
  IntegralValues out;
  out.l2_sq = (v * v).integrate(d);
  out.h1_semi_sq = (vx * vx + vy * vy).integrate(d);
  const Poly2 two_vxy_sq = vxy * vxy + vxy * vxy;
  out.h2_semi_sq = (vxx * vxx + two_vxy_sq + vyy * vyy).integrate(d);
  out.load = (f * v).integrate(d);
  return out;
}

}  // namespace bfs
