#pragma once

#include <string>
#include <vector>

#include "nemflow/simulator.hpp"

namespace nemflow {

// Records CSV.  Fixed header, one row per record, every value printed with 17
// significant digits so that read(write(x)) reproduces x bit for bit.
extern const char* const kRecordsHeader;

void write_records(const std::vector<EnergyRecord>& records, const std::string& path);
std::vector<EnergyRecord> read_records(const std::string& path);

}  // namespace nemflow
