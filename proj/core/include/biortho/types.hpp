#pragma once

// Natural units throughout: hbar = c = eps0 = 1.

#include <complex>
#include <Eigen/Core>
#include <Eigen/Geometry>

namespace biortho {

using Complex = std::complex<double>;
using Vec3 = Eigen::Vector3d;
using CVec3 = Eigen::Vector3cd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi3 = 8.0 * kPi * kPi * kPi;  // (2 pi)^3

enum class FrequencySign : int { positive = +1, negative = -1 };
enum class Helicity : int { plus = +1, minus = -1 };

inline constexpr int sign(FrequencySign e) { return static_cast<int>(e); }
inline constexpr int sign(Helicity h) { return static_cast<int>(h); }
inline constexpr int index(FrequencySign e) { return e == FrequencySign::positive ? 0 : 1; }
inline constexpr int index(Helicity h) { return h == Helicity::plus ? 0 : 1; }

inline constexpr FrequencySign kFrequencySigns[2] = {FrequencySign::positive,
                                                     FrequencySign::negative};
inline constexpr Helicity kHelicities[2] = {Helicity::plus, Helicity::minus};

}  // namespace biortho
