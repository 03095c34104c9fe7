#pragma once

#include <string_view>

#include "commnet/errors.hpp"
#include "commnet/process.hpp"

namespace commnet {

/// Parses the concrete grammar (UTF-8 text, `#` line comments):
///
///   process  := "0" | process "||" process | "new" ident "." process
///             | ident "->" ident | ident "=>" "[" identlist? "]"
///             | "?" ident | "+" ident | "*" ident | "(" process ")"
///   identlist := ident ("," ident)*
///   ident     := [A-Za-z0-9_]+           ("new" is reserved)
///
/// `||` is lowest precedence and right-associative; `new` extends to the rest
/// of the enclosing group. Parenthesization and whitespace do not affect the
/// resulting AST: `||`-chains always build one flat parallel composition.
/// Throws ParseError with 1-based line/column on malformed input. Channels
/// not bound by `new` are free (global); there is no unbound-channel error.
ProcessPtr parse_process(std::string_view text);

}  // namespace commnet
