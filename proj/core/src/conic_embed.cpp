#include "risnoma/conic/embed.hpp"

namespace risnoma::conic {

MatR embed_hermitian(const MatC& h) {
  const auto n = h.rows();
  if (h.cols() != n) throw std::invalid_argument("embed_hermitian: not square");
  const double scale = std::max(1.0, h.norm());
  if ((h - h.adjoint()).norm() > 1e-10 * scale)
    throw std::invalid_argument("embed_hermitian: input not Hermitian");
  MatR out(2 * n, 2 * n);
  const MatR re = h.real();
  const MatR im = h.imag();
  out.topLeftCorner(n, n) = re;
  out.topRightCorner(n, n) = -im;
  out.bottomLeftCorner(n, n) = im;
  out.bottomRightCorner(n, n) = re;
  return out;
}

MatC unembed_hermitian(const MatR& y) {
  const auto n2 = y.rows();
  if (y.cols() != n2 || n2 % 2 != 0)
    throw std::invalid_argument("unembed_hermitian: bad dimensions");
  const auto n = n2 / 2;
  // average the redundant blocks; exact for matrices already in embedded form
  const MatR re = 0.5 * (y.topLeftCorner(n, n) + y.bottomRightCorner(n, n));
  const MatR im = 0.5 * (y.bottomLeftCorner(n, n) - y.topRightCorner(n, n));
  MatC out(n, n);
  out.real() = 0.5 * (re + re.transpose());
  out.imag() = 0.5 * (im - im.transpose());
  return out;
}

}  // namespace risnoma::conic
