#ifndef SRS_COMMANDS_HPP
#define SRS_COMMANDS_HPP

#include "srs/scan_table.hpp"
#include "srs/scenario.hpp"

namespace srs {

/// J(t0, gamma) over a t0 sweep; the refined peak goes in the summary.
ScanTable cmd_fig2(const ScenarioConfig& config);

/// Continuum carrier weight over an x sweep, with the refined argmax and the
/// number of interior local maxima in the summary.
ScanTable cmd_fig3(const ScenarioConfig& config);

/// Net single-atom probability along each configured route, side by side.
/// With two or more routes a rel_dev column compares every route with the
/// first one.
ScanTable cmd_wt(const ScenarioConfig& config);

/// Geometry -> F, F_sp, Gamma -> gamma -> w_T -> G, one row per sweep value,
/// every intermediate in its own column.
ScanTable cmd_gain(const ScenarioConfig& config);

/// Phase-matching factor, solid-angle factor and collective width.
ScanTable cmd_phasematch(const ScenarioConfig& config);

/// Route-equivalence harness: time vs frequency amplitudes for a one-level
/// atom and frequency vs closed-form w_T for the Lorentzian. Failing checks
/// carry a note.
ScanTable cmd_oracle(const ScenarioConfig& config);

/// Dispatches on config.command and fills the shared metadata.
ScanTable run_command(const ScenarioConfig& config);

} // namespace srs

#endif // SRS_COMMANDS_HPP
