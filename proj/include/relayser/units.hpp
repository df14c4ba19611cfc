#ifndef RELAYSER_UNITS_HPP
#define RELAYSER_UNITS_HPP

#include <cmath>

namespace relayser {

// x_dB = 10 log10(x_linear); the only dB<->linear conversions in the project.
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double v) { return 10.0 * std::log10(v); }

}  // namespace relayser

#endif
