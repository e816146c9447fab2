#include <cctype>
#include <charconv>
#include <cstdio>
#include <optional>
#include <sstream>

#include "ccc/cli.hpp"
#include "ccc/error.hpp"
#include "ccc/quantizer.hpp"

namespace ccc::cli {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> fields(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    const std::size_t start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

std::optional<long> to_long(std::string_view s) {
  long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

[[noreturn]] void fail(std::size_t line, const std::string& msg) {
  throw ParseError("line " + std::to_string(line) + ": " + msg);
}

struct Block {
  int level = 0;
  bool generator = false;
  std::size_t line = 0;
  std::vector<BitWord> rows;
};

}  // namespace

CodeChain parse_chain(std::string_view text) {
  std::optional<long> n, levels;
  std::vector<Block> blocks;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto f = fields(line);
    if (f[0] == "n" || f[0] == "L") {
      if (!blocks.empty()) fail(line_no, "'" + std::string(f[0]) + "' must precede the code blocks");
      if (f.size() != 2) fail(line_no, "expected '" + std::string(f[0]) + " <integer>'");
      const auto v = to_long(f[1]);
      if (!v) fail(line_no, "'" + std::string(f[1]) + "' is not an integer");
      auto& slot = f[0] == "n" ? n : levels;
      if (slot) fail(line_no, "duplicate '" + std::string(f[0]) + "' line");
      slot = *v;
      continue;
    }
    if (f[0] == "code") {
      if (!n || !levels) fail(line_no, "'n' and 'L' must be given before the first code block");
      if (f.size() != 3) fail(line_no, "expected 'code <level> explicit|generator'");
      const auto lv = to_long(f[1]);
      if (!lv) fail(line_no, "'" + std::string(f[1]) + "' is not a level number");
      if (f[2] != "explicit" && f[2] != "generator") {
        fail(line_no, "unknown code kind '" + std::string(f[2]) + "'");
      }
      for (const auto& b : blocks) {
        if (b.level == *lv) fail(line_no, "duplicate level " + std::to_string(*lv));
      }
      if (*lv < 1 || *lv > *levels) {
        fail(line_no, "level count mismatch: level " + std::to_string(*lv) + " outside 1.." + std::to_string(*levels));
      }
      const long expected = static_cast<long>(blocks.size()) + 1;
      if (*lv != expected) {
        fail(line_no, "level " + std::to_string(*lv) + " out of order, expected level " + std::to_string(expected));
      }
      blocks.push_back({static_cast<int>(*lv), f[2] == "generator", line_no, {}});
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(line[0]))) {
      fail(line_no, "unknown directive '" + std::string(f[0]) + "'");
    }
    if (blocks.empty()) fail(line_no, "codeword row before any code block");
    auto& b = blocks.back();
    const std::size_t row = b.rows.size() + 1;
    for (char ch : line) {
      if (ch != '0' && ch != '1') {
        fail(line_no, std::string("invalid symbol '") + ch + "' at level " + std::to_string(b.level) + ", row " +
                          std::to_string(row));
      }
    }
    if (static_cast<long>(line.size()) != *n) {
      fail(line_no, "row length " + std::to_string(line.size()) + " at level " + std::to_string(b.level) +
                        ", row " + std::to_string(row) + " (expected " + std::to_string(*n) + ")");
    }
    b.rows.push_back(BitWord::from_string(line));
  }

  if (!n || !levels) throw ParseError("missing 'n' or 'L' line");
  if (*n < 1 || *n > BitWord::kMaxLength) {
    throw ParseError("n must be in 1.." + std::to_string(BitWord::kMaxLength));
  }
  if (*levels < 1 || *levels > CodeChain::kMaxLevels) {
    throw ParseError("L must be in 1.." + std::to_string(CodeChain::kMaxLevels));
  }
  if (static_cast<long>(blocks.size()) != *levels) {
    throw ParseError("level count mismatch: expected " + std::to_string(*levels) + " code blocks, found " +
                     std::to_string(blocks.size()));
  }

  std::vector<BinaryCode> codes;
  for (const auto& b : blocks) {
    const int len = static_cast<int>(*n);
    if (b.generator) {
      codes.push_back(span(len, b.rows));
    } else {
      if (b.rows.empty()) throw ParseError("empty code at level " + std::to_string(b.level));
      codes.push_back(BinaryCode::from_words(len, b.rows));
    }
  }
  return CodeChain(std::move(codes));
}

std::string format_chain(const CodeChain& chain) {
  std::ostringstream os;
  os << "n " << chain.length() << "\nL " << chain.levels() << "\n";
  for (int lv = 0; lv < chain.levels(); ++lv) {
    os << "code " << lv + 1 << " explicit\n";
    for (const auto& w : chain.code(lv).words()) os << w.to_string() << "\n";
  }
  return os.str();
}

std::vector<PresetInfo> presets() {
  std::vector<PresetInfo> out = {
      {"example1", "n=2, L=2: C1={00,11}, C2={00}; a two-point residue set that is not a lattice"},
      {"example3", "n=1, L=3: C1=C2={0,1}, C3={0}; kissing number alternates between 1 and 2"},
      {"example5", "n=3, L=3: every level {000,011,101,110}; not closed under the Schur product"},
  };
  for (int n = 2; n <= BitWord::kMaxLength; ++n) {
    out.push_back({"dplus" + std::to_string(n),
                   "n=" + std::to_string(n) + ", L=2: repetition code over even-weight code"});
  }
  return out;
}

CodeChain preset(std::string_view name) {
  auto words = [](int n, std::initializer_list<const char*> list) {
    std::vector<BitWord> w;
    for (const char* s : list) w.push_back(BitWord::from_string(s));
    return BinaryCode::from_words(n, w);
  };
  if (name == "example1") return CodeChain({words(2, {"00", "11"}), words(2, {"00"})});
  if (name == "example3") return CodeChain({words(1, {"0", "1"}), words(1, {"0", "1"}), words(1, {"0"})});
  if (name == "example5") {
    const auto c = words(3, {"000", "101", "110", "011"});
    return CodeChain({c, c, c});
  }
  if (name.substr(0, 5) == "dplus") {
    const auto n = to_long(name.substr(5));
    if (n && *n >= 2 && *n <= BitWord::kMaxLength) return dplus_chain(static_cast<int>(*n));
  }
  throw ParseError("unknown preset '" + std::string(name) + "'");
}

std::string chain_digest(const CodeChain& chain) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : format_chain(chain)) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string("fnv1a64:") + buf;
}

Point parse_point(std::string_view text) {
  Point p;
  std::size_t pos = 0;
  while (true) {
    const auto comma = text.find(',', pos);
    const auto item = trim(text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
    Int v = 0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || ec != std::errc{} || ptr != item.data() + item.size()) {
      throw ParseError("'" + std::string(text) + "' is not a comma separated integer list");
    }
    p.push_back(v);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return p;
}

}  // namespace ccc::cli
