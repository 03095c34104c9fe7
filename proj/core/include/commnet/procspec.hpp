#pragma once

#include <string>
#include <vector>

#include "commnet/process.hpp"

namespace commnet {

/// Resolves a process source specification:
///   file:PATH            parse a .proc file
///   direct:0,1,2,3       direct-broadcast builder over the listed nodes
///   multicast:@PATH      multicast builder over a .graph file
///   multicast:0>1,1>0    multicast builder over inline edges
///   process:TEXT         inline process text
/// A bare string is treated as a file path. Relative paths resolve against
/// base_dir when given.
ProcessPtr resolve_process_spec(const std::string& spec, const std::string& base_dir = "");

/// "3" gives the default alphabet of that size; otherwise a comma-separated
/// symbol list.
std::vector<std::string> parse_alphabet_spec(const std::string& spec);

}  // namespace commnet
