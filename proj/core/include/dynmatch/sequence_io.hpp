#pragma once

#include <iosfwd>
#include <string>

#include "dynmatch/workload.hpp"

namespace dynmatch {

// Text sequence format: first line "n <N>", then one event per line,
// "+ u v" or "- u v" with 0-based ids, single spaces, '\n' endings.
// Round-trips exactly; parse errors carry the 1-based line number.

std::string sequence_to_string(const Workload& w);
Workload sequence_from_string(const std::string& text);

void write_sequence_file(const std::string& path, const Workload& w);
Workload read_sequence_file(const std::string& path);

}  // namespace dynmatch
