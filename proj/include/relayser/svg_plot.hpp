#ifndef RELAYSER_SVG_PLOT_HPP
#define RELAYSER_SVG_PLOT_HPP

// Minimal native SVG emission: log-y SER curves over an SNR axis, one
// polyline per method.  No external plotting dependency; the SVG never
// affects CSV content.

#include <string>
#include <vector>

#include "relayser/sweep.hpp"

namespace relayser {

std::string sweep_to_svg(const std::vector<SweepRow>& rows, const std::string& title);
std::string opa_to_svg(const std::vector<OpaRow>& rows, const std::string& title);

}  // namespace relayser

#endif
