#pragma once

// Recursive-descent parser for the ASCII formula grammar.
//
//   predicate := x<k> (+|-) x<m> (>|<) <real>  |  x<k> (>|<) <real>
//   atom      := predicate | T | '(' formula ')'
//   unary     := '!' unary | F[a,b) unary | G[a,b) unary | atom
//   untilexp  := unary (U[a,b) unary)*          (right associative)
//   andexp    := untilexp ('&' untilexp)*
//   orexp     := andexp ('|' andexp)*
//   formula   := orexp ('->' orexp)*            (right associative)
//
// Precedence, tightest first: ! F G, U, &, |, ->.

#include <cctype>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "uastl/formula.hpp"

namespace uastl {

/// Syntax or grammar-membership error; `pos` is a byte offset into the input.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, std::size_t pos)
        : std::runtime_error(msg + " at position " + std::to_string(pos)),
          pos_(pos) {}
    std::size_t pos() const { return pos_; }

private:
    std::size_t pos_;
};

namespace detail {

class FormulaParser {
public:
    FormulaParser(std::string_view text, const PredicateGrammar* grammar)
        : text_(text), grammar_(grammar) {}

    StlFormula parse() {
        StlFormula f = parse_implies();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected trailing input");
        return f;
    }

private:
    std::string_view text_;
    const PredicateGrammar* grammar_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg, pos_);
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    bool lookahead(std::string_view s) {
        skip_ws();
        return text_.substr(pos_, s.size()) == s;
    }

    int parse_uint() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        if (pos_ == start) fail("expected integer");
        return std::atoi(std::string(text_.substr(start, pos_ - start)).c_str());
    }

    double parse_real() {
        skip_ws();
        std::size_t start = pos_;
        if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
        bool digits = false;
        while (pos_ < text_.size() &&
               (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) {
            digits = digits || std::isdigit(static_cast<unsigned char>(text_[pos_]));
            ++pos_;
        }
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            ++pos_;
            if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
        }
        if (!digits) fail("expected real number");
        return std::strtod(std::string(text_.substr(start, pos_ - start)).c_str(), nullptr);
    }

    TimeWindow parse_window() {
        if (!eat('[')) fail("expected '[' of time window");
        int a = parse_uint();
        if (!eat(',')) fail("expected ',' in time window");
        int b = parse_uint();
        if (!eat(')')) fail("expected ')' closing time window");
        if (a >= b) fail("time window requires a < b");
        return TimeWindow(a, b);
    }

    // x<k>, 1-based in the text, 0-based index returned.
    int parse_var() {
        skip_ws();
        if (pos_ >= text_.size() || text_[pos_] != 'x') fail("expected signal variable");
        ++pos_;
        int k = parse_uint();
        if (k < 1) fail("signal dimensions are 1-based");
        return k - 1;
    }

    StlFormula parse_predicate() {
        const std::size_t at = pos_;
        int k1 = parse_var();
        int k2 = -1;
        double sign2 = 0.0;
        skip_ws();
        if (peek() == '+' || (peek() == '-' && !lookahead("->"))) {
            sign2 = peek() == '+' ? 1.0 : -1.0;
            ++pos_;
            k2 = parse_var();
        }
        char op = peek();
        if (op != '>' && op != '<') fail("expected '>' or '<' in predicate");
        ++pos_;
        double threshold = parse_real();

        std::size_t dims = static_cast<std::size_t>(std::max(k1, k2)) + 1;
        if (grammar_ && !grammar_->atoms.empty())
            dims = std::max(dims, grammar_->atoms[0].coeffs.size());
        std::vector<double> coeffs(dims, 0.0);
        coeffs[k1] += 1.0;
        if (k2 >= 0) coeffs[k2] += sign2;
        Sense sense = op == '>' ? Sense::Gt : Sense::Lt;

        if (grammar_) {
            if (grammar_->find(coeffs, sense) < 0)
                throw ParseError("predicate outside grammar", at);
            const Interval* dom = threshold_domain_of(coeffs, sense);
            if (dom && !dom->contains(threshold))
                throw ParseError("predicate threshold outside grammar domain", at);
        }
        return f_pred(Predicate(std::move(coeffs), sense, threshold));
    }

    const Interval* threshold_domain_of(const std::vector<double>& coeffs, Sense sense) const {
        if (!grammar_ || grammar_->threshold_domain.empty()) return nullptr;
        int q = grammar_->find(coeffs, sense);
        if (q < 0 || static_cast<std::size_t>(q) >= grammar_->threshold_domain.size())
            return nullptr;
        return &grammar_->threshold_domain[q];
    }

    StlFormula parse_unary() {
        skip_ws();
        if (eat('!')) return f_not(parse_unary());
        if (lookahead("F[")) {
            ++pos_;
            TimeWindow w = parse_window();
            return f_eventually(w, parse_unary());
        }
        if (lookahead("G[")) {
            ++pos_;
            TimeWindow w = parse_window();
            return f_always(w, parse_unary());
        }
        if (eat('(')) {
            StlFormula f = parse_implies();
            if (!eat(')')) fail("expected ')'");
            return f;
        }
        char c = peek();
        if (c == 'T') {
            ++pos_;
            return f_true();
        }
        if (c == 'x') return parse_predicate();
        fail("expected formula");
    }

    StlFormula parse_until() {
        StlFormula lhs = parse_unary();
        if (lookahead("U[")) {
            ++pos_;
            TimeWindow w = parse_window();
            StlFormula rhs = parse_until();  // right associative
            return f_until(w, std::move(lhs), std::move(rhs));
        }
        return lhs;
    }

    StlFormula parse_and() {
        StlFormula lhs = parse_until();
        while (peek() == '&') {
            ++pos_;
            lhs = f_and(std::move(lhs), parse_until());
        }
        return lhs;
    }

    StlFormula parse_or() {
        StlFormula lhs = parse_and();
        while (peek() == '|') {
            ++pos_;
            lhs = f_or(std::move(lhs), parse_and());
        }
        return lhs;
    }

    StlFormula parse_implies() {
        StlFormula lhs = parse_or();
        if (lookahead("->")) {
            pos_ += 2;
            return f_implies(std::move(lhs), parse_implies());
        }
        return lhs;
    }
};

}  // namespace detail

/// Parse a formula, checking every predicate against the grammar.
inline StlFormula parse_formula(std::string_view text, const PredicateGrammar& grammar) {
    return detail::FormulaParser(text, &grammar).parse();
}

/// Parse without grammar membership checks.
inline StlFormula parse_formula(std::string_view text) {
    return detail::FormulaParser(text, nullptr).parse();
}

}  // namespace uastl
