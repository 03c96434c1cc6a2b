#pragma once

#include "config.hpp"
#include "report.hpp"

namespace lab {

// Each command writes its files into `out` and returns the process exit code.
int cmd_symbol(const LabConfig& cfg, OutputSet& out);
int cmd_simulate(const LabConfig& cfg, OutputSet& out);
int cmd_decay(const LabConfig& cfg, OutputSet& out);
int cmd_prop31(const LabConfig& cfg, OutputSet& out);
int cmd_check(const LabConfig& cfg, OutputSet& out);

}  // namespace lab
