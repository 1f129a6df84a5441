#pragma once

#include <string_view>

#include "hodyn/symcore/context.hpp"
#include "hodyn/symcore/expr.hpp"

namespace hodyn::sym {

/// Parses the expression grammar
///
///   expr   := term (('+'|'-') term)*
///   term   := unary (('*'|'/') unary)*
///   unary  := '-' unary | power
///   power  := atom ('^' uint)?
///   atom   := rational | symbol | '(' expr ')'
///   symbol := identifier "'"*          rational := uint ('/' uint)?
///
/// Identifiers must be declared in ctx; a symbol with r primes resolves to the
/// r-th jet of its stem and is rejected when r exceeds the declared jet order.
/// Throws ParseError (with column) or ValidationError.
Expr parse(std::string_view text, const VariableContext& ctx);

}  // namespace hodyn::sym
