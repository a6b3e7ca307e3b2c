#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace mactt::cli {

/// Runs the `mactt` command line (arguments exclude the program name).
/// Returns 0 on success, 1 when a checked invariant fails and 2 on usage,
/// input or parse errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// 64-bit FNV-1a, printed in input digests.
std::uint64_t fnv1a(std::string_view bytes);

}  // namespace mactt::cli
