#ifndef RGH_PLOT_HPP
#define RGH_PLOT_HPP

#include <iosfwd>

#include "rgh/experiments.hpp"

namespace rgh {

// Log-log plot of the per-n mean/min/max critical radius with a reference
// line of slope -1/d. Self-contained SVG, no external assets.
void write_sweep_svg(const SweepResult& result, std::ostream& out);

}  // namespace rgh

#endif
