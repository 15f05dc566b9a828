#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ori/fold_ops.hpp"
#include "ori/geometry.hpp"

// Straight-line construction language, one statement per declaration or
// check:
//
//   program    := statement* ;
//   statement  := point_decl | line_decl | fold_decl | assert_stmt | print_stmt ;
//   point_decl := "point" IDENT "=" ( "(" NUM "," NUM ")"
//                                   | "intersect" "(" IDENT "," IDENT ")"
//                                   | "reflect" "(" IDENT "," IDENT ")" ) ;
//   line_decl  := "line" IDENT "=" ( "coeffs" "(" NUM "," NUM "," NUM ")"
//                                  | "through" "(" IDENT "," IDENT ")"
//                                  | "reflect" "(" IDENT "," IDENT ")" ) ;
//   fold_decl  := "fold" IDENT "=" OPNAME "(" IDENT ("," IDENT)* ")" [ "select" NUM ] ;
//   assert_stmt := "assert_on" "(" IDENT "," IDENT "," NUM ")"
//                | "assert_dist" "(" IDENT "," IDENT "," NUM "," NUM ")"
//                | "assert_angle" "(" IDENT "," IDENT "," NUM "," NUM ")"
//                | "assert_parallel" "(" IDENT "," IDENT "," NUM ")" ;
//   print_stmt := "print" "(" IDENT ")" ;
//   OPNAME     := "O1" .. "O8" ;
//
// `#` starts a line comment. Numbers are decimal literals with optional
// sign, fraction and exponent.
namespace ori::script {

struct SourceLoc {
    int line = 1;
    int col = 1;
};

struct LexError : Error {
    int line, col;
    LexError(int line, int col, const std::string& message);
};

struct ParseError : Error {
    int line, col;
    std::string expected, found;
    ParseError(int line, int col, const std::string& expected, const std::string& found);
};

struct RuntimeError : Error {
    int statement_index;  // 1-based
    int line, col;
    bool assertion_failure;
    RuntimeError(int statement_index, SourceLoc loc, const std::string& reason,
                 bool assertion_failure = false);
};

struct Token {
    enum class Kind { keyword, ident, number, punct, end };
    Kind kind;
    std::string text;
    double value = 0;  // for numbers
    int line = 1;
    int col = 1;
};

std::vector<Token> tokenize(std::string_view source);

struct Coords {
    double x, y;
};
struct CoeffsSpec {
    double a, b, c;
};
struct PairRef {
    std::string first, second;
};

struct PointDecl {
    std::string name;
    enum class Source { coords, intersect, reflect } source;
    Coords coords{};
    PairRef refs{};
    SourceLoc loc;
};

struct LineDecl {
    std::string name;
    enum class Source { coeffs, through, reflect } source;
    CoeffsSpec coeffs{};
    PairRef refs{};
    SourceLoc loc;
};

struct FoldDecl {
    std::string name;
    int op;  // 1..8
    std::vector<std::string> args;
    std::optional<long> select;  // 1-based; absent means "must be unambiguous"
    SourceLoc loc;
};

struct AssertStmt {
    enum class Kind { on_line, dist, angle, parallel } kind;
    std::string lhs, rhs;
    double expected = 0;  // used by dist and angle
    double tol = 0;
    SourceLoc loc;
};

struct PrintStmt {
    std::string name;
    SourceLoc loc;
};

using Statement = std::variant<PointDecl, LineDecl, FoldDecl, AssertStmt, PrintStmt>;

struct Program {
    std::vector<Statement> statements;
};

Program parse(const std::vector<Token>& tokens);

// Equality up to source locations: what the round-trip through format
// preserves.
bool structurally_equal(const Statement& a, const Statement& b);
bool structurally_equal(const Program& a, const Program& b);

// Canonical pretty-print; parse(tokenize(format(p))) is structurally p.
std::string format(const Program& program);

struct Value {
    std::variant<Point, Line> object;
    bool from_fold = false;

    bool is_point() const { return object.index() == 0; }
    const Point& point() const { return std::get<Point>(object); }
    const Line& line() const { return std::get<Line>(object); }
};

struct TraceEntry {
    int statement_index;  // 1-based
    std::string text;
    bool is_print = false;
};

struct Environment {
    std::map<std::string, Value> bindings;
    std::vector<TraceEntry> trace;
};

// Evaluates statements in order. Folds pick the `select`-th solution in the
// deterministic order; a missing `select` is only allowed when there is
// exactly one solution. Zero solutions, rebinding, unknown names, operand
// mismatches and failed assertions throw RuntimeError.
Environment evaluate(const Program& program, const Tolerances& tol = {});

std::string value_repr(const Value& value);

}  // namespace ori::script
