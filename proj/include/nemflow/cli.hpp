#pragma once

namespace nemflow {

// Subcommand dispatcher.  Exit codes: 0 success, 1 usage, 2 numerical or data
// failure.  All output files land under --out; a run.json manifest (config
// echo, termination reason, wall time) is always written by simulate/steady.
int cli_dispatch(int argc, const char* const* argv);

}  // namespace nemflow
