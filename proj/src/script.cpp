#include "ori/script.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <sstream>

#include "ori/format_utils.hpp"

namespace ori::script {

namespace {

std::string at(int line, int col) {
    return "line " + std::to_string(line) + " column " + std::to_string(col);
}

const std::array<std::string_view, 21> kKeywords = {
    "point", "line", "fold",  "select", "print", "intersect", "reflect",
    "coeffs", "through", "assert_on", "assert_dist", "assert_angle",
    "assert_parallel", "O1", "O2", "O3", "O4", "O5", "O6", "O7", "O8"};

bool is_keyword(std::string_view text) {
    return std::find(kKeywords.begin(), kKeywords.end(), text) != kKeywords.end();
}

bool ident_start(char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_';
}

bool ident_char(char c) {
    return ident_start(c) || (c >= '0' && c <= '9') || c == '\'';
}

bool digit(char c) {
    return c >= '0' && c <= '9';
}

}  // namespace

LexError::LexError(int line, int col, const std::string& message)
    : Error("lex error at " + at(line, col) + ": " + message), line(line), col(col) {}

ParseError::ParseError(int line, int col, const std::string& expected,
                       const std::string& found)
    : Error("parse error at " + at(line, col) + ": expected " + expected + ", found " +
            found),
      line(line),
      col(col),
      expected(expected),
      found(found) {}

RuntimeError::RuntimeError(int statement_index, SourceLoc loc, const std::string& reason,
                           bool assertion_failure)
    : Error("runtime error in statement " + std::to_string(statement_index) + " (" +
            at(loc.line, loc.col) + "): " + reason),
      statement_index(statement_index),
      line(loc.line),
      col(loc.col),
      assertion_failure(assertion_failure) {}

std::vector<Token> tokenize(std::string_view source) {
    std::vector<Token> tokens;
    int line = 1;
    int col = 1;
    std::size_t i = 0;
    const auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k, ++i) {
            if (source[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };

    while (i < source.size()) {
        const char c = source[i];
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            advance(1);
            continue;
        }
        if (c == '#') {
            while (i < source.size() && source[i] != '\n') advance(1);
            continue;
        }
        const int tline = line;
        const int tcol = col;
        if (c == '(' || c == ')' || c == ',' || c == '=') {
            tokens.push_back({Token::Kind::punct, std::string(1, c), 0, tline, tcol});
            advance(1);
            continue;
        }
        if (ident_start(c)) {
            std::size_t j = i;
            while (j < source.size() && ident_char(source[j])) ++j;
            std::string text(source.substr(i, j - i));
            advance(j - i);
            tokens.push_back({is_keyword(text) ? Token::Kind::keyword : Token::Kind::ident,
                              std::move(text), 0, tline, tcol});
            continue;
        }
        if (digit(c) || c == '+' || c == '-') {
            std::size_t j = i;
            if (source[j] == '+' || source[j] == '-') ++j;
            if (j >= source.size() || !digit(source[j])) {
                throw LexError(tline, tcol, "malformed number");
            }
            while (j < source.size() && digit(source[j])) ++j;
            if (j < source.size() && source[j] == '.') {
                ++j;
                if (j >= source.size() || !digit(source[j])) {
                    throw LexError(tline, tcol, "digit required after decimal point");
                }
                while (j < source.size() && digit(source[j])) ++j;
            }
            if (j < source.size() && (source[j] == 'e' || source[j] == 'E')) {
                std::size_t k = j + 1;
                if (k < source.size() && (source[k] == '+' || source[k] == '-')) ++k;
                if (k >= source.size() || !digit(source[k])) {
                    throw LexError(tline, tcol, "malformed exponent");
                }
                while (k < source.size() && digit(source[k])) ++k;
                j = k;
            }
            const std::string text(source.substr(i, j - i));
            double value = 0;
            const char* begin = text.data();
            const char* end = begin + text.size();
            const char* start = (*begin == '+') ? begin + 1 : begin;  // from_chars rejects '+'
            const auto res = std::from_chars(start, end, value);
            if (res.ec != std::errc() || res.ptr != end || !std::isfinite(value)) {
                throw LexError(tline, tcol, "number out of range");
            }
            advance(j - i);
            tokens.push_back({Token::Kind::number, text, value, tline, tcol});
            continue;
        }
        throw LexError(tline, tcol, std::string("unexpected character '") + c + "'");
    }
    tokens.push_back({Token::Kind::end, "", 0, line, col});
    return tokens;
}

namespace {

class Parser {
public:
    explicit Parser(const std::vector<Token>& tokens) : tokens_(tokens) {}

    Program run() {
        Program program;
        while (!peek_is_end()) {
            program.statements.push_back(statement());
        }
        return program;
    }

private:
    const std::vector<Token>& tokens_;
    std::size_t pos_ = 0;

    const Token& peek() const { return tokens_[pos_]; }
    bool peek_is_end() const { return peek().kind == Token::Kind::end; }

    [[noreturn]] void fail(const std::string& expected) const {
        const Token& t = peek();
        fail_at(t, expected);
    }
    [[noreturn]] static void fail_at(const Token& t, const std::string& expected) {
        const std::string found =
            t.kind == Token::Kind::end ? "end of input" : "'" + t.text + "'";
        throw ParseError(t.line, t.col, expected, found);
    }

    const Token& take() { return tokens_[pos_++]; }

    const Token& expect_punct(char c) {
        if (peek().kind != Token::Kind::punct || peek().text[0] != c) {
            fail(std::string("'") + c + "'");
        }
        return take();
    }

    const Token& expect_keyword(std::string_view kw) {
        if (peek().kind != Token::Kind::keyword || peek().text != kw) {
            fail("'" + std::string(kw) + "'");
        }
        return take();
    }

    bool peek_keyword(std::string_view kw) const {
        return peek().kind == Token::Kind::keyword && peek().text == kw;
    }

    std::string ident() {
        if (peek().kind != Token::Kind::ident) fail("identifier");
        return take().text;
    }

    double number() {
        if (peek().kind != Token::Kind::number) fail("number");
        return take().value;
    }

    PairRef pair_args() {
        expect_punct('(');
        PairRef refs;
        refs.first = ident();
        expect_punct(',');
        refs.second = ident();
        expect_punct(')');
        return refs;
    }

    Statement statement() {
        const Token& t = peek();
        if (t.kind != Token::Kind::keyword) fail("statement keyword");
        if (t.text == "point") return point_decl();
        if (t.text == "line") return line_decl();
        if (t.text == "fold") return fold_decl();
        if (t.text == "print") return print_stmt();
        if (t.text.rfind("assert_", 0) == 0) return assert_stmt();
        fail("statement keyword");
    }

    Statement point_decl() {
        PointDecl decl;
        decl.loc = {peek().line, peek().col};
        expect_keyword("point");
        decl.name = ident();
        expect_punct('=');
        if (peek_keyword("intersect")) {
            take();
            decl.source = PointDecl::Source::intersect;
            decl.refs = pair_args();
        } else if (peek_keyword("reflect")) {
            take();
            decl.source = PointDecl::Source::reflect;
            decl.refs = pair_args();
        } else {
            decl.source = PointDecl::Source::coords;
            expect_punct('(');
            decl.coords.x = number();
            expect_punct(',');
            decl.coords.y = number();
            expect_punct(')');
        }
        return decl;
    }

    Statement line_decl() {
        LineDecl decl;
        decl.loc = {peek().line, peek().col};
        expect_keyword("line");
        decl.name = ident();
        expect_punct('=');
        if (peek_keyword("coeffs")) {
            take();
            decl.source = LineDecl::Source::coeffs;
            expect_punct('(');
            decl.coeffs.a = number();
            expect_punct(',');
            decl.coeffs.b = number();
            expect_punct(',');
            decl.coeffs.c = number();
            expect_punct(')');
        } else if (peek_keyword("through")) {
            take();
            decl.source = LineDecl::Source::through;
            decl.refs = pair_args();
        } else if (peek_keyword("reflect")) {
            take();
            decl.source = LineDecl::Source::reflect;
            decl.refs = pair_args();
        } else {
            fail("'coeffs', 'through' or 'reflect'");
        }
        return decl;
    }

    Statement fold_decl() {
        FoldDecl decl;
        decl.loc = {peek().line, peek().col};
        expect_keyword("fold");
        decl.name = ident();
        expect_punct('=');
        const Token& op = peek();
        if (op.kind == Token::Kind::keyword && op.text.size() == 2 && op.text[0] == 'O' &&
            op.text[1] >= '1' && op.text[1] <= '8') {
            decl.op = op.text[1] - '0';
            take();
        } else {
            fail_at(op, "unknown operation, expected O1..O8");
        }
        expect_punct('(');
        decl.args.push_back(ident());
        while (peek().kind == Token::Kind::punct && peek().text == ",") {
            take();
            decl.args.push_back(ident());
        }
        expect_punct(')');
        if (peek_keyword("select")) {
            take();
            const Token& num = peek();
            const double v = number();
            if (v < 1 || v != std::floor(v) || v > 1e9) {
                fail_at(num, "positive integer select index");
            }
            decl.select = static_cast<long>(v);
        }
        return decl;
    }

    Statement assert_stmt() {
        AssertStmt stmt;
        stmt.loc = {peek().line, peek().col};
        const std::string kw = take().text;
        const bool has_expected = kw == "assert_dist" || kw == "assert_angle";
        if (kw == "assert_on") {
            stmt.kind = AssertStmt::Kind::on_line;
        } else if (kw == "assert_dist") {
            stmt.kind = AssertStmt::Kind::dist;
        } else if (kw == "assert_angle") {
            stmt.kind = AssertStmt::Kind::angle;
        } else if (kw == "assert_parallel") {
            stmt.kind = AssertStmt::Kind::parallel;
        } else {
            throw ParseError(stmt.loc.line, stmt.loc.col, "assertion keyword", "'" + kw + "'");
        }
        expect_punct('(');
        stmt.lhs = ident();
        expect_punct(',');
        stmt.rhs = ident();
        expect_punct(',');
        if (has_expected) {
            stmt.expected = number();
            expect_punct(',');
        }
        stmt.tol = number();
        expect_punct(')');
        return stmt;
    }

    Statement print_stmt() {
        PrintStmt stmt;
        stmt.loc = {peek().line, peek().col};
        expect_keyword("print");
        expect_punct('(');
        stmt.name = ident();
        expect_punct(')');
        return stmt;
    }
};

}  // namespace

Program parse(const std::vector<Token>& tokens) {
    return Parser(tokens).run();
}

namespace {

bool eq(const PointDecl& a, const PointDecl& b) {
    if (a.name != b.name || a.source != b.source) return false;
    if (a.source == PointDecl::Source::coords) {
        return a.coords.x == b.coords.x && a.coords.y == b.coords.y;
    }
    return a.refs.first == b.refs.first && a.refs.second == b.refs.second;
}

bool eq(const LineDecl& a, const LineDecl& b) {
    if (a.name != b.name || a.source != b.source) return false;
    if (a.source == LineDecl::Source::coeffs) {
        return a.coeffs.a == b.coeffs.a && a.coeffs.b == b.coeffs.b &&
               a.coeffs.c == b.coeffs.c;
    }
    return a.refs.first == b.refs.first && a.refs.second == b.refs.second;
}

bool eq(const FoldDecl& a, const FoldDecl& b) {
    return a.name == b.name && a.op == b.op && a.args == b.args && a.select == b.select;
}

bool eq(const AssertStmt& a, const AssertStmt& b) {
    return a.kind == b.kind && a.lhs == b.lhs && a.rhs == b.rhs &&
           a.expected == b.expected && a.tol == b.tol;
}

bool eq(const PrintStmt& a, const PrintStmt& b) {
    return a.name == b.name;
}

}  // namespace

bool structurally_equal(const Statement& a, const Statement& b) {
    if (a.index() != b.index()) return false;
    return std::visit(
        [&](const auto& lhs) {
            using T = std::decay_t<decltype(lhs)>;
            return eq(lhs, std::get<T>(b));
        },
        a);
}

bool structurally_equal(const Program& a, const Program& b) {
    if (a.statements.size() != b.statements.size()) return false;
    for (std::size_t i = 0; i < a.statements.size(); ++i) {
        if (!structurally_equal(a.statements[i], b.statements[i])) return false;
    }
    return true;
}

namespace {

struct Formatter {
    std::ostringstream out;

    void operator()(const PointDecl& d) {
        out << "point " << d.name << " = ";
        switch (d.source) {
            case PointDecl::Source::coords:
                out << "(" << format_double(d.coords.x) << ", " << format_double(d.coords.y)
                    << ")";
                break;
            case PointDecl::Source::intersect:
                out << "intersect(" << d.refs.first << ", " << d.refs.second << ")";
                break;
            case PointDecl::Source::reflect:
                out << "reflect(" << d.refs.first << ", " << d.refs.second << ")";
                break;
        }
    }

    void operator()(const LineDecl& d) {
        out << "line " << d.name << " = ";
        switch (d.source) {
            case LineDecl::Source::coeffs:
                out << "coeffs(" << format_double(d.coeffs.a) << ", "
                    << format_double(d.coeffs.b) << ", " << format_double(d.coeffs.c) << ")";
                break;
            case LineDecl::Source::through:
                out << "through(" << d.refs.first << ", " << d.refs.second << ")";
                break;
            case LineDecl::Source::reflect:
                out << "reflect(" << d.refs.first << ", " << d.refs.second << ")";
                break;
        }
    }

    void operator()(const FoldDecl& d) {
        out << "fold " << d.name << " = O" << d.op << "(";
        for (std::size_t i = 0; i < d.args.size(); ++i) {
            if (i) out << ", ";
            out << d.args[i];
        }
        out << ")";
        if (d.select) out << " select " << *d.select;
    }

    void operator()(const AssertStmt& s) {
        switch (s.kind) {
            case AssertStmt::Kind::on_line:
                out << "assert_on(" << s.lhs << ", " << s.rhs << ", " << format_double(s.tol)
                    << ")";
                break;
            case AssertStmt::Kind::dist:
                out << "assert_dist(" << s.lhs << ", " << s.rhs << ", "
                    << format_double(s.expected) << ", " << format_double(s.tol) << ")";
                break;
            case AssertStmt::Kind::angle:
                out << "assert_angle(" << s.lhs << ", " << s.rhs << ", "
                    << format_double(s.expected) << ", " << format_double(s.tol) << ")";
                break;
            case AssertStmt::Kind::parallel:
                out << "assert_parallel(" << s.lhs << ", " << s.rhs << ", "
                    << format_double(s.tol) << ")";
                break;
        }
    }

    void operator()(const PrintStmt& s) { out << "print(" << s.name << ")"; }
};

}  // namespace

std::string format(const Program& program) {
    Formatter fmt;
    for (const Statement& s : program.statements) {
        std::visit(fmt, s);
        fmt.out << "\n";
    }
    return fmt.out.str();
}

std::string value_repr(const Value& value) {
    if (value.is_point()) {
        const Point& p = value.point();
        return "point(" + format_double(p.x) + ", " + format_double(p.y) + ")";
    }
    const Line& l = value.line();
    return "line(" + format_double(l.a()) + ", " + format_double(l.b()) + ", " +
           format_double(l.c()) + ")";
}

namespace {

class Evaluator {
public:
    Evaluator(const Program& program, const Tolerances& tol) : program_(program), tol_(tol) {}

    Environment run() {
        for (std::size_t i = 0; i < program_.statements.size(); ++i) {
            index_ = static_cast<int>(i) + 1;
            std::visit([&](const auto& s) { exec(s); }, program_.statements[i]);
        }
        return std::move(env_);
    }

private:
    const Program& program_;
    Tolerances tol_;
    Environment env_;
    int index_ = 0;

    [[noreturn]] void fail(SourceLoc loc, const std::string& reason,
                           bool assertion = false) const {
        throw RuntimeError(index_, loc, reason, assertion);
    }

    void bind(SourceLoc loc, const std::string& name, Value value) {
        const auto [it, inserted] = env_.bindings.emplace(name, std::move(value));
        if (!inserted) fail(loc, "'" + name + "' is already bound");
        env_.trace.push_back({index_, name + " = " + value_repr(it->second), false});
    }

    const Value& lookup(SourceLoc loc, const std::string& name) const {
        const auto it = env_.bindings.find(name);
        if (it == env_.bindings.end()) fail(loc, "unknown name '" + name + "'");
        return it->second;
    }

    const Point& point_arg(SourceLoc loc, const std::string& name) const {
        const Value& v = lookup(loc, name);
        if (!v.is_point()) fail(loc, "'" + name + "' is a line, expected a point");
        return v.point();
    }

    const Line& line_arg(SourceLoc loc, const std::string& name) const {
        const Value& v = lookup(loc, name);
        if (v.is_point()) fail(loc, "'" + name + "' is a point, expected a line");
        return v.line();
    }

    template <class Fn>
    auto guarded(SourceLoc loc, Fn&& fn) const {
        try {
            return fn();
        } catch (const Error& e) {
            fail(loc, e.what());
        }
    }

    void exec(const PointDecl& d) {
        Point p;
        switch (d.source) {
            case PointDecl::Source::coords:
                p = guarded(d.loc, [&] { return Point(d.coords.x, d.coords.y); });
                break;
            case PointDecl::Source::intersect: {
                const Line& l1 = line_arg(d.loc, d.refs.first);
                const Line& l2 = line_arg(d.loc, d.refs.second);
                p = guarded(d.loc, [&] { return intersect(l1, l2, tol_); });
                break;
            }
            case PointDecl::Source::reflect: {
                const Point& subject = point_arg(d.loc, d.refs.first);
                const Line& mirror = line_arg(d.loc, d.refs.second);
                p = reflect_point(subject, mirror, tol_);
                break;
            }
        }
        bind(d.loc, d.name, Value{p, false});
    }

    void exec(const LineDecl& d) {
        Line l;
        switch (d.source) {
            case LineDecl::Source::coeffs:
                l = guarded(d.loc, [&] { return Line(d.coeffs.a, d.coeffs.b, d.coeffs.c, tol_); });
                break;
            case LineDecl::Source::through: {
                const Point& p1 = point_arg(d.loc, d.refs.first);
                const Point& p2 = point_arg(d.loc, d.refs.second);
                l = guarded(d.loc, [&] { return line_through(p1, p2, tol_); });
                break;
            }
            case LineDecl::Source::reflect: {
                const Line& subject = line_arg(d.loc, d.refs.first);
                const Line& mirror = line_arg(d.loc, d.refs.second);
                l = guarded(d.loc, [&] { return reflect_line(subject, mirror, tol_); });
                break;
            }
        }
        bind(d.loc, d.name, Value{l, false});
    }

    OpInstance build_instance(const FoldDecl& d) const {
        static constexpr const char* signatures[] = {
            "", "O1(point, point)", "O2(line, line)", "O3(line)", "O4(point, point)",
            "O5(point, line)", "O6(point, line, point)", "O7(point, line, point, line)",
            "O8(point, line, line)"};
        static constexpr std::size_t arity[] = {0, 2, 2, 1, 2, 2, 3, 4, 3};
        if (d.args.size() != arity[d.op]) {
            fail(d.loc, std::string("operand mismatch, expected ") + signatures[d.op]);
        }
        const auto pt = [&](int i) { return point_arg(d.loc, d.args[i]); };
        const auto ln = [&](int i) { return line_arg(d.loc, d.args[i]); };
        switch (d.op) {
            case 1: return OpFoldPointToPoint{pt(0), pt(1)};
            case 2: return OpFoldLineToLine{ln(0), ln(1)};
            case 3: return OpFoldAlongLine{ln(0)};
            case 4: return OpFoldThroughTwoPoints{pt(0), pt(1)};
            case 5: return OpFoldPerpendicularThroughPoint{pt(0), ln(1)};
            case 6: return OpFoldPointToLineThroughPoint{pt(0), ln(1), pt(2)};
            case 7: return OpFoldTwoPointsToTwoLines{pt(0), ln(1), pt(2), ln(3)};
            default: return OpFoldPointToLinePerpendicular{pt(0), ln(1), ln(2)};
        }
    }

    void exec(const FoldDecl& d) {
        const OpInstance inst = build_instance(d);
        const SolutionSet solutions = guarded(d.loc, [&] { return solve(inst, tol_); });
        if (solutions.empty()) {
            fail(d.loc, std::string(op_name(inst)) + " returned 0 solutions (" +
                            std::string(to_string(solutions.condition_note)) + ")");
        }
        std::size_t pick = 0;
        if (d.select) {
            if (*d.select < 1 || static_cast<std::size_t>(*d.select) > solutions.count()) {
                fail(d.loc, "select " + std::to_string(*d.select) + " out of range, " +
                                std::string(op_name(inst)) + " returned " +
                                std::to_string(solutions.count()) + " solution(s)");
            }
            pick = static_cast<std::size_t>(*d.select) - 1;
        } else if (solutions.count() > 1) {
            fail(d.loc, std::string(op_name(inst)) + " returned " +
                            std::to_string(solutions.count()) +
                            " solutions; an explicit select is required");
        }
        bind(d.loc, d.name, Value{solutions.fold_lines[pick], true});
    }

    void exec(const AssertStmt& s) {
        double measured = 0;
        double expected = s.expected;
        const Value& lhs = lookup(s.loc, s.lhs);
        const Value& rhs = lookup(s.loc, s.rhs);
        switch (s.kind) {
            case AssertStmt::Kind::on_line:
                measured = distance(point_arg(s.loc, s.lhs), line_arg(s.loc, s.rhs));
                expected = 0;
                break;
            case AssertStmt::Kind::dist:
                if (lhs.is_point() && rhs.is_point()) {
                    measured = distance(lhs.point(), rhs.point());
                } else if (lhs.is_point()) {
                    measured = distance(lhs.point(), rhs.line());
                } else if (rhs.is_point()) {
                    measured = distance(rhs.point(), lhs.line());
                } else {
                    measured = guarded(
                        s.loc, [&] { return parallel_line_distance(lhs.line(), rhs.line(), tol_); });
                }
                break;
            case AssertStmt::Kind::angle: {
                const Line& l1 = line_arg(s.loc, s.lhs);
                const Line& l2 = line_arg(s.loc, s.rhs);
                const double cross = l1.a() * l2.b() - l2.a() * l1.b();
                const double dot = l1.a() * l2.a() + l1.b() * l2.b();
                measured = std::atan2(std::abs(cross), std::abs(dot));
                break;
            }
            case AssertStmt::Kind::parallel: {
                const Line& l1 = line_arg(s.loc, s.lhs);
                const Line& l2 = line_arg(s.loc, s.rhs);
                measured = std::abs(l1.a() * l2.b() - l2.a() * l1.b());
                expected = 0;
                break;
            }
        }
        if (!(std::abs(measured - expected) <= s.tol)) {
            fail(s.loc,
                 "assertion failed: measured " + format_double(measured) + ", expected " +
                     format_double(expected) + " within " + format_double(s.tol),
                 true);
        }
        env_.trace.push_back(
            {index_, "assert ok: measured " + format_double(measured), false});
    }

    void exec(const PrintStmt& s) {
        const Value& v = lookup(s.loc, s.name);
        env_.trace.push_back({index_, s.name + " = " + value_repr(v), true});
    }
};

}  // namespace

Environment evaluate(const Program& program, const Tolerances& tol) {
    return Evaluator(program, tol).run();
}

}  // namespace ori::script
