#pragma once

#include <memory>
#include <string>
#include <vector>

#include "qseries/polyq.hpp"
#include "qseries/qpolyx.hpp"

namespace qseries::cli {

// Expression-language AST. Shapes:
//   integer   value            nonnegative literal
//   rational  half             "n/2" literal, argument position only
//   variable  var              q, u (= q^{1/2}), or x
//   negate    kids[0]          leading minus of an expression
//   add/sub   kids[0], kids[1]
//   mul       kids[0], kids[1]
//   power     kids[0], half    exponent integer or half-integer, either sign
//   call      callee, kids     function application
enum class ExprKind { integer, rational, variable, negate, add, sub, mul, power, call };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    ExprKind kind;
    long long value = 0;
    polyq::HalfInt half{0};
    char var = 'q';
    std::string callee;
    std::vector<ExprPtr> kids;
};

bool equal(const Expr& a, const Expr& b);

// Grammar: expr := ['-'] term (('+'|'-') term)*; term := factor ('*' factor)*;
// factor := atom ['^' exponent]; atom := integer | variable | call | '(' expr ')';
// exponent := ['-'] integer ['/' '2']. Call arguments additionally accept the
// bare half-integer literal ['-'] integer '/' '2'. Throws ParseError.
ExprPtr parse(const std::string& src);

// Canonical text; parse(print(e)) is structurally identical to e.
std::string print(const Expr& e);

// LaTeX rendering of the expression itself (bracket matrices for qbinom).
std::string to_latex(const Expr& e);

// Exact evaluation; scalars embed as degree-0 polynomials. Throws EvalError.
qpolyx::XPoly eval(const Expr& e);
qpolyx::XPoly eval_string(const std::string& src);

}  // namespace qseries::cli
