#include "dareal/sampling.hpp"

#include <cmath>

#include "dareal/colligation.hpp"

namespace dareal {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

SampleGen::SampleGen(std::uint64_t seed) : state_(seed) {
  // splitmix-style scramble so nearby seeds give unrelated streams
  state_ += 0x9e3779b97f4a7c15ull;
  next_u64();
}

std::uint64_t SampleGen::next_u64() {
  // xorshift64*
  state_ ^= state_ >> 12;
  state_ ^= state_ << 25;
  state_ ^= state_ >> 27;
  return state_ * 0x2545f4914f6cdd1dull;
}

double SampleGen::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double SampleGen::normal() {
  // Box-Muller; the tiny offset keeps log() finite
  double u1 = uniform() + 1e-300;
  double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

Complex SampleGen::complex_normal() {
  double u1 = uniform() + 1e-300;
  double u2 = uniform();
  double r = std::sqrt(-std::log(u1));
  return Complex(r * std::cos(kTwoPi * u2), r * std::sin(kTwoPi * u2));
}

ComplexMatrix SampleGen::gaussian_matrix(Index rows, Index cols) {
  ComplexMatrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = complex_normal();
  return m;
}

BallPoint SampleGen::ball_point(Index d, double radius) {
  std::vector<Complex> v(static_cast<size_t>(d));
  double norm2 = 0.0;
  for (auto& z : v) {
    z = complex_normal();
    norm2 += std::norm(z);
  }
  if (norm2 <= 0) norm2 = 1.0;
  // radius uniform in (0, radius]; direction uniform on the sphere
  double r = radius * (1.0 - uniform());
  double scale = r / std::sqrt(norm2);
  for (auto& z : v) z *= scale;
  return BallPoint::interior(std::move(v));
}

std::vector<BallPoint> SampleGen::ball_points(int count, Index d, double radius) {
  std::vector<BallPoint> pts;
  pts.reserve(static_cast<size_t>(count));
  for (int i = 0; i < count; ++i) pts.push_back(ball_point(d, radius));
  return pts;
}

}  // namespace dareal
