#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "ccc/chain.hpp"

namespace ccc::cli {

/// Line-oriented chain file:
///
///   n 3
///   L 2
///   code 1 explicit      # rows are the codewords
///   000
///   111
///   code 2 generator     # rows span the code
///   110
///   011
///
/// '#' starts a comment. Exactly L code blocks, numbered 1..L in order.
CodeChain parse_chain(std::string_view text);

/// Canonical text: every code written explicitly with its words sorted.
std::string format_chain(const CodeChain& chain);

struct PresetInfo {
  std::string name;
  std::string description;
};

/// example1, example3, example5 and dplus2 .. dplus24.
std::vector<PresetInfo> presets();
CodeChain preset(std::string_view name);

/// FNV-1a 64 of the canonical chain text, as "fnv1a64:<16 hex digits>".
std::string chain_digest(const CodeChain& chain);

/// Parses a comma separated integer list such as "1,0,-3".
Point parse_point(std::string_view text);

/// Exit codes of run().
enum Exit : int { kOk = 0, kRefuted = 1, kInputError = 2, kInconsistent = 3 };

/// Entry point behind the ccc executable; args excludes the program name.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace ccc::cli
