#pragma once

// Serialization of the IR to SMT-LIB interchange text with the optimization
// extensions ((maximize ...), (assert-soft ... :weight w)) understood by
// optimizing solvers. Emission is deterministic: the same encoding always
// produces byte-identical scripts.

#include <charconv>
#include <cmath>
#include <cstdio>
#include <string>

#include "uastl/encode/ir.hpp"

namespace uastl::ir {

namespace detail {

inline std::string smt_real(double v) {
    const bool neg = std::signbit(v);
    const double av = neg ? -v : v;
    std::string body;
    if (av == std::floor(av) && av < 1e15) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.1f", av);
        body = buf;
    } else {
        char buf[64];
        auto res = std::to_chars(buf, buf + sizeof buf, av);
        body.assign(buf, res.ptr);
        if (body.find('e') != std::string::npos || body.find('E') != std::string::npos) {
            // SMT-LIB decimals have no exponent form.
            char fixed[512];
            std::snprintf(fixed, sizeof fixed, "%.20f", av);
            body = fixed;
            while (body.size() > 1 && body.back() == '0') body.pop_back();
            if (body.back() == '.') body += "0";
        }
    }
    return neg ? "(- " + body + ")" : body;
}

inline std::string smt_int(long v) {
    if (v < 0) return "(- " + std::to_string(-v) + ")";
    return std::to_string(v);
}

struct TermWriter {
    const Encoding& enc;
    int let_counter = 0;

    void write(const Term& t, std::string& out) {
        switch (t->kind) {
            case Kind::BoolConst:
                out += t->bval ? "true" : "false";
                return;
            case Kind::NumConst:
                out += t->num_is_int ? smt_int(static_cast<long>(t->num)) : smt_real(t->num);
                return;
            case Kind::Var:
                out += enc.vars[static_cast<std::size_t>(t->var)].name;
                return;
            case Kind::Not: unary("not", t, out); return;
            case Kind::Neg: unary("-", t, out); return;
            case Kind::And: nary("and", t, out); return;
            case Kind::Or: nary("or", t, out); return;
            case Kind::Add: nary("+", t, out); return;
            case Kind::Implies: binary("=>", t, out); return;
            case Kind::Iff: binary("=", t, out); return;
            case Kind::Eq: binary("=", t, out); return;
            case Kind::Le: binary("<=", t, out); return;
            case Kind::Lt: binary("<", t, out); return;
            case Kind::Sub: binary("-", t, out); return;
            case Kind::Min: chain(t, out, /*is_min=*/true); return;
            case Kind::Max: chain(t, out, /*is_min=*/false); return;
        }
    }

private:
    void unary(const char* op, const Term& t, std::string& out) {
        out += "(";
        out += op;
        out += " ";
        write(t->args[0], out);
        out += ")";
    }
    void binary(const char* op, const Term& t, std::string& out) {
        out += "(";
        out += op;
        out += " ";
        write(t->args[0], out);
        out += " ";
        write(t->args[1], out);
        out += ")";
    }
    void nary(const char* op, const Term& t, std::string& out) {
        out += "(";
        out += op;
        for (const Term& a : t->args) {
            out += " ";
            write(a, out);
        }
        out += ")";
    }
    // min/max as a left fold of ite's. Every argument is bound by a let
    // first so nested chains stay linear in the term size.
    void chain(const Term& t, std::string& out, bool is_min) {
        const char* cmp = is_min ? "<=" : ">=";
        int opened = 0;
        std::vector<std::string> arg_names;
        for (const Term& a : t->args) {
            std::string name = "_m" + std::to_string(let_counter++);
            out += "(let ((" + name + " ";
            write(a, out);
            out += ")) ";
            ++opened;
            arg_names.push_back(std::move(name));
        }
        std::string acc = arg_names[0];
        for (std::size_t idx = 1; idx < arg_names.size(); ++idx) {
            std::string name = "_m" + std::to_string(let_counter++);
            out += "(let ((" + name + " (ite (";
            out += cmp;
            out += " " + acc + " " + arg_names[idx] + ") " + acc + " " + arg_names[idx] +
                   "))) ";
            ++opened;
            acc = name;
        }
        out += acc;
        for (int i = 0; i < opened; ++i) out += ")";
    }
};

}  // namespace detail

struct SmtEmitOptions {
    bool soft_as_hard = false;  // plain satisfiability instead of MaxSMT
    bool get_model_values = true;
};

/// Render the encoding as a complete solver script.
inline std::string to_smtlib(const Encoding& enc, const SmtEmitOptions& opts = {}) {
    std::string out;
    out.reserve(1 << 16);
    out += "(set-option :produce-models true)\n";
    for (const VarInfo& v : enc.vars) {
        out += "(declare-const " + v.name + " ";
        switch (v.sort) {
            case Sort::Bool: out += "Bool"; break;
            case Sort::Int: out += "Int"; break;
            case Sort::Real: out += "Real"; break;
        }
        out += ")\n";
    }
    for (const VarInfo& v : enc.vars) {
        if (!v.bounded) continue;
        if (v.sort == Sort::Int) {
            out += "(assert (<= " + detail::smt_int(static_cast<long>(v.lo)) + " " + v.name +
                   "))\n";
            out += "(assert (<= " + v.name + " " + detail::smt_int(static_cast<long>(v.hi)) +
                   "))\n";
        } else {
            out += "(assert (<= " + detail::smt_real(v.lo) + " " + v.name + "))\n";
            out += "(assert (<= " + v.name + " " + detail::smt_real(v.hi) + "))\n";
        }
    }
    for (const Term& t : enc.hard) {
        detail::TermWriter w{enc};
        out += "(assert ";
        w.write(t, out);
        out += ")\n";
    }
    for (const auto& [t, weight] : enc.soft) {
        detail::TermWriter w{enc};
        out += opts.soft_as_hard ? "(assert " : "(assert-soft ";
        w.write(t, out);
        if (!opts.soft_as_hard) {
            out += " :weight ";
            out += detail::smt_int(static_cast<long>(weight));
        }
        out += ")\n";
    }
    if (enc.objective) {
        detail::TermWriter w{enc};
        out += "(maximize ";
        w.write(*enc.objective, out);
        out += ")\n";
    }
    out += "(check-sat)\n";
    if (enc.objective) out += "(get-objectives)\n";
    if (opts.get_model_values) {
        out += "(get-value (";
        for (std::size_t i = 0; i < enc.vars.size(); ++i) {
            if (i) out += " ";
            out += enc.vars[i].name;
        }
        out += "))\n";
    }
    out += "(exit)\n";
    return out;
}

}  // namespace uastl::ir
