/// @file drivers.hpp
/// @brief The three command drivers behind the CLI: refinement tables,
///        per-step energy logs, and field snapshots.
///
/// All numeric output uses 12 significant digits in scientific notation,
/// so identical plans produce byte-identical files. Every file starts
/// with provenance comment lines echoing the resolved plan.
#pragma once

#include <ostream>

#include "kgz/config.hpp"

namespace kgz {

/// Refinement study CSV; needs a problem with an exact solution.
void run_convergence(const RunPlan& plan, std::ostream& out);

/// Per-step energy breakdown CSV with a drift column and a trailing
/// max-drift summary; needs an unforced problem. Rows are flushed as
/// they are produced, so a failed step leaves the prefix on disk.
void run_energy(const RunPlan& plan, std::ostream& out);

/// Writes one legacy structured-grid file per snapshot time (|u|, real
/// and imaginary parts, density on the node lattice) plus a metadata
/// file, into the directory plan.out (default ".").
void run_simulate(const RunPlan& plan);

/// Dispatches on plan.command; convergence/energy write to plan.out or
/// stdout when empty.
void run_plan(const RunPlan& plan);

}  // namespace kgz
