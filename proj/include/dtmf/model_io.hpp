#pragma once

#include <string>

#include "dtmf/ca.hpp"
#include "dtmf/lsa.hpp"

namespace dtmf {

// Model files: one JSON header line (type, spec, ids, ranks), then named
// numeric CSV blocks. Every number survives a round trip exactly.
void save_lsa(const LsaModel& model, const std::string& path);
LsaModel load_lsa(const std::string& path);

void save_ca(const CaModel& model, const std::string& path);
CaModel load_ca(const std::string& path);

// Reads just the header and reports "lsa" or "ca".
std::string model_type(const std::string& path);

}  // namespace dtmf
