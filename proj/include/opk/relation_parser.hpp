#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "opk/cubic.hpp"

namespace opk {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t position, const std::string& message)
      : std::runtime_error("at position " + std::to_string(position) + ": " + message), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Parses a cubic relation.
///
///   expr    := ['+'|'-'] term (('+'|'-') term)*
///   term    := [rational ['*']] product
///   product := primary (('*' | '.' | juxtaposition) primary)*   (left to right)
///   primary := 'a' digits | '(' expr ')' | '(' expr ',' expr ',' expr ')'
///            | '[' expr ',' expr ']'
///
/// '*' and juxtaposition are the plain product, '.' the symmetric product,
/// [x,y] the bracket and (x,y,z) the associator. Every term must be
/// multilinear in a1, a2, a3.
CubicExpr parse_relation(std::string_view text);

/// Parses and converts to coordinates; a syntax or multilinearity error is
/// reported as ParseError.
CubicVector parse_relation_vector(std::string_view text, CubicSpace space);

}  // namespace opk
