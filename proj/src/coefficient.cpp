#include "ncsurf/coefficient.hpp"

#include <vector>

#include "ncsurf/error.hpp"

namespace ncsurf {

Coeff Coeff::h(const Rational& h_sq) {
  if (h_sq <= 0) throw Error(ErrorCode::DomainError, "h_sq must be positive");
  Coeff c;
  c.h_re_ = 1;
  c.h_sq_ = h_sq;
  return c;
}

void Coeff::adopt_h_sq(const Coeff& o) {
  if (!o.has_h()) return;
  if (has_h() && h_sq_ != o.h_sq_) {
    throw Error(ErrorCode::DomainError, "mixing coefficients with different h^2");
  }
  h_sq_ = o.h_sq_;
}

Coeff Coeff::operator-() const {
  Coeff c = *this;
  c.re_ = -c.re_;
  c.im_ = -c.im_;
  c.h_re_ = -c.h_re_;
  c.h_im_ = -c.h_im_;
  return c;
}

Coeff& Coeff::operator+=(const Coeff& o) {
  adopt_h_sq(o);
  re_ += o.re_;
  im_ += o.im_;
  h_re_ += o.h_re_;
  h_im_ += o.h_im_;
  return *this;
}

Coeff& Coeff::operator-=(const Coeff& o) { return *this += -o; }

Coeff& Coeff::operator*=(const Coeff& o) {
  // (u + v h)(u' + v' h) = u u' + v v' h² + (u v' + v u') h, u, v Gaussian rationals.
  Rational hsq = has_h() ? h_sq_ : o.h_sq_;
  if (has_h() && o.has_h() && h_sq_ != o.h_sq_) {
    throw Error(ErrorCode::DomainError, "mixing coefficients with different h^2");
  }
  auto cmul = [](const Rational& a, const Rational& b, const Rational& c, const Rational& d) {
    return std::pair<Rational, Rational>(a * c - b * d, a * d + b * c);
  };
  auto [uu_re, uu_im] = cmul(re_, im_, o.re_, o.im_);
  auto [vv_re, vv_im] = cmul(h_re_, h_im_, o.h_re_, o.h_im_);
  auto [uv_re, uv_im] = cmul(re_, im_, o.h_re_, o.h_im_);
  auto [vu_re, vu_im] = cmul(h_re_, h_im_, o.re_, o.im_);
  re_ = uu_re + vv_re * hsq;
  im_ = uu_im + vv_im * hsq;
  h_re_ = uv_re + vu_re;
  h_im_ = uv_im + vu_im;
  h_sq_ = hsq;
  return *this;
}

bool operator==(const Coeff& a, const Coeff& b) {
  if (a.re_ != b.re_ || a.im_ != b.im_ || a.h_re_ != b.h_re_ || a.h_im_ != b.h_im_) return false;
  return !a.has_h() || a.h_sq_ == b.h_sq_;
}

Coeff Coeff::divided_by(const Rational& r) const {
  if (r == 0) throw Error(ErrorCode::DomainError, "division by zero");
  Coeff c = *this;
  c.re_ /= r;
  c.im_ /= r;
  c.h_re_ /= r;
  c.h_im_ /= r;
  return c;
}

std::complex<double> Coeff::evaluate(double h_value) const {
  return {to_double(re_) + to_double(h_re_) * h_value, to_double(im_) + to_double(h_im_) * h_value};
}

std::string Coeff::str() const {
  std::vector<std::pair<Rational, std::string>> parts = {
      {re_, ""}, {im_, "*i"}, {h_re_, "*h"}, {h_im_, "*i*h"}};
  std::string out;
  for (const auto& [value, suffix] : parts) {
    if (value == 0) continue;
    std::string text = to_string(value);
    if (!out.empty() && value > 0) out += "+";
    out += text + suffix;
  }
  return out.empty() ? "0" : out;
}

}  // namespace ncsurf
