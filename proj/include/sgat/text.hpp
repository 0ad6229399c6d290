#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace sgat::text {

struct Token {
  std::string text;
  int column;  // 1-based
};

/// One non-blank line of a document with `#` comments stripped.
struct Line {
  int number;  // 1-based
  std::vector<Token> tokens;
};

/// Splits a document into whitespace-separated tokens per line, dropping
/// comments and blank lines.
std::vector<Line> tokenize(std::string_view document);

/// `[A-Za-z_][A-Za-z0-9_]*`
bool is_identifier(std::string_view s);

/// Splits on a single-character separator; empty pieces are kept.
std::vector<std::string> split(std::string_view s, char sep);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

/// Rejoins the tokens of a line starting at `first` with single spaces.
std::string rest_of_line(const Line& line, std::size_t first);

}  // namespace sgat::text
