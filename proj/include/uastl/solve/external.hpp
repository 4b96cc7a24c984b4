#pragma once

// External optimizing-SMT backend: serialize the encoding to SMT-LIB text,
// run a solver process on it, and parse the model back. The command line is
// run through /bin/sh, so "z3 -in" or a path to any solver reading SMT-LIB
// from stdin works.

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cctype>
#include <chrono>
#include <cstring>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "uastl/encode/ir.hpp"
#include "uastl/encode/smtlib.hpp"

namespace uastl::ir {

// ---- tiny s-expression reader --------------------------------------------------

namespace sexpr {

struct Node {
    std::string atom;          // nonempty for leaves
    std::vector<Node> items;   // children for lists
    bool is_atom() const { return !atom.empty(); }
};

inline void skip_ws(const std::string& s, std::size_t& p) {
    while (p < s.size()) {
        if (std::isspace(static_cast<unsigned char>(s[p]))) {
            ++p;
        } else if (s[p] == ';') {
            while (p < s.size() && s[p] != '\n') ++p;
        } else {
            break;
        }
    }
}

inline Node read(const std::string& s, std::size_t& p) {
    skip_ws(s, p);
    if (p >= s.size()) throw std::runtime_error("sexpr: unexpected end of input");
    if (s[p] == '(') {
        ++p;
        Node n;
        while (true) {
            skip_ws(s, p);
            if (p >= s.size()) throw std::runtime_error("sexpr: unbalanced '('");
            if (s[p] == ')') {
                ++p;
                return n;
            }
            n.items.push_back(read(s, p));
        }
    }
    std::size_t start = p;
    while (p < s.size() && !std::isspace(static_cast<unsigned char>(s[p])) && s[p] != '(' &&
           s[p] != ')')
        ++p;
    Node n;
    n.atom = s.substr(start, p - start);
    return n;
}

/// Evaluate a ground numeric value: numerals, decimals, (- x), (/ a b).
inline double value(const Node& n) {
    if (n.is_atom()) {
        if (n.atom == "true") return 1.0;
        if (n.atom == "false") return 0.0;
        return std::strtod(n.atom.c_str(), nullptr);
    }
    if (n.items.empty()) throw std::runtime_error("sexpr: empty value");
    const std::string& op = n.items[0].atom;
    if (op == "-" && n.items.size() == 2) return -value(n.items[1]);
    if (op == "/" && n.items.size() == 3) return value(n.items[1]) / value(n.items[2]);
    if (op == "to_real" && n.items.size() == 2) return value(n.items[1]);
    throw std::runtime_error("sexpr: unsupported value form '" + op + "'");
}

}  // namespace sexpr

// ---- subprocess ------------------------------------------------------------------

struct SubprocessResult {
    int exit_code = -1;
    bool timed_out = false;
    std::string output;
};

/// Run `command` under /bin/sh with `input` on stdin; collect stdout.
inline SubprocessResult run_subprocess(const std::string& command, const std::string& input,
                                       double timeout_s) {
    SubprocessResult result;
    int in_pipe[2], out_pipe[2];
    if (pipe(in_pipe) != 0 || pipe(out_pipe) != 0)
        throw std::runtime_error("run_subprocess: pipe failed");

    pid_t pid = fork();
    if (pid < 0) throw std::runtime_error("run_subprocess: fork failed");
    if (pid == 0) {
        dup2(in_pipe[0], STDIN_FILENO);
        dup2(out_pipe[1], STDOUT_FILENO);
        close(in_pipe[0]);
        close(in_pipe[1]);
        close(out_pipe[0]);
        close(out_pipe[1]);
        execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
        _exit(127);
    }
    close(in_pipe[0]);
    close(out_pipe[1]);

    // Nonblocking writes interleaved with reads; the child may emit output
    // while we are still feeding it.
    fcntl(in_pipe[1], F_SETFL, O_NONBLOCK);
    fcntl(out_pipe[0], F_SETFL, O_NONBLOCK);
    signal(SIGPIPE, SIG_IGN);

    const auto deadline = std::chrono::steady_clock::now() +
                          std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                              std::chrono::duration<double>(timeout_s));
    std::size_t written = 0;
    bool stdin_open = true;
    char buf[1 << 16];
    while (true) {
        struct pollfd fds[2];
        int nfds = 0;
        fds[nfds++] = {out_pipe[0], POLLIN, 0};
        if (stdin_open) fds[nfds++] = {in_pipe[1], POLLOUT, 0};

        const auto now = std::chrono::steady_clock::now();
        if (now >= deadline) {
            result.timed_out = true;
            kill(pid, SIGKILL);
            break;
        }
        const int wait_ms = static_cast<int>(std::min<long long>(
            250, std::chrono::duration_cast<std::chrono::milliseconds>(deadline - now).count() +
                     1));
        if (poll(fds, static_cast<nfds_t>(nfds), wait_ms) < 0) break;

        if (fds[0].revents & (POLLIN | POLLHUP)) {
            ssize_t got = ::read(out_pipe[0], buf, sizeof buf);
            if (got > 0) {
                result.output.append(buf, static_cast<std::size_t>(got));
                continue;
            }
            if (got == 0) break;  // EOF
        }
        if (stdin_open && nfds > 1 && (fds[1].revents & (POLLOUT | POLLERR))) {
            if (written < input.size()) {
                ssize_t sent =
                    ::write(in_pipe[1], input.data() + written, input.size() - written);
                if (sent > 0) written += static_cast<std::size_t>(sent);
                else if (sent < 0 && errno != EAGAIN) {
                    close(in_pipe[1]);
                    stdin_open = false;
                }
            }
            if (written >= input.size() && stdin_open) {
                close(in_pipe[1]);
                stdin_open = false;
            }
        }
    }
    if (stdin_open) close(in_pipe[1]);
    close(out_pipe[0]);
    int status = 0;
    waitpid(pid, &status, 0);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

// ---- external backend ---------------------------------------------------------------

class ExternalSolver {
public:
    explicit ExternalSolver(std::string command) : command_(std::move(command)) {
        if (command_.empty())
            throw std::invalid_argument("ExternalSolver: empty solver command");
    }

    const std::string& command() const { return command_; }

    SolverModel optimize(const Encoding& enc, double timeout_s) const {
        return run(enc, SmtEmitOptions{}, timeout_s);
    }

    /// MaxSMT over the soft constraints. With plain_sat set, the soft
    /// constraints are asserted hard and the query is plain satisfiability.
    SolverModel max_weighted(const Encoding& enc, double timeout_s,
                             bool plain_sat = false) const {
        SmtEmitOptions opts;
        opts.soft_as_hard = plain_sat;
        return run(enc, opts, timeout_s);
    }

    /// The emitted script, for inspection and byte-exactness checks.
    static std::string script(const Encoding& enc, bool soft_as_hard = false) {
        SmtEmitOptions opts;
        opts.soft_as_hard = soft_as_hard;
        return to_smtlib(enc, opts);
    }

private:
    std::string command_;

    SolverModel run(const Encoding& enc, const SmtEmitOptions& opts, double timeout_s) const {
        SolverModel m;
        SubprocessResult proc = run_subprocess(command_, to_smtlib(enc, opts), timeout_s);
        if (proc.timed_out) {
            m.status = SolveStatus::TimedOut;
            m.message = "external solver timed out";
            return m;
        }
        try {
            parse_response(enc, proc.output, m);
        } catch (const std::exception& ex) {
            m.status = SolveStatus::Error;
            m.message = std::string("unparseable solver response: ") + ex.what() +
                        " (exit code " + std::to_string(proc.exit_code) + ")";
        }
        return m;
    }

    static void parse_response(const Encoding& enc, const std::string& text, SolverModel& m) {
        std::size_t p = 0;
        sexpr::skip_ws(text, p);
        // Leading verdict token: sat/unsat/unknown.
        std::size_t start = p;
        while (p < text.size() && !std::isspace(static_cast<unsigned char>(text[p]))) ++p;
        const std::string verdict = text.substr(start, p - start);
        if (verdict == "unsat") {
            m.status = SolveStatus::Unsat;
            return;
        }
        if (verdict != "sat" && verdict != "unknown")
            throw std::runtime_error("unexpected verdict '" + verdict + "'");

        std::unordered_map<std::string, VarId> by_name;
        for (std::size_t i = 0; i < enc.vars.size(); ++i)
            by_name.emplace(enc.vars[i].name, static_cast<VarId>(i));

        m.values.assign(enc.vars.size(), 0.0);
        bool saw_values = false;
        while (true) {
            sexpr::skip_ws(text, p);
            if (p >= text.size()) break;
            if (text[p] != '(') {  // stray token (e.g. "success"), skip it
                while (p < text.size() && !std::isspace(static_cast<unsigned char>(text[p])))
                    ++p;
                continue;
            }
            sexpr::Node node = sexpr::read(text, p);
            // (objectives (...)) block or ((name value) ...) bindings.
            if (!node.items.empty() && node.items[0].is_atom() &&
                node.items[0].atom == "objectives")
                continue;
            for (const sexpr::Node& binding : node.items) {
                if (binding.is_atom() || binding.items.size() != 2 ||
                    !binding.items[0].is_atom())
                    continue;
                auto it = by_name.find(binding.items[0].atom);
                if (it == by_name.end()) continue;
                m.values[static_cast<std::size_t>(it->second)] =
                    sexpr::value(binding.items[1]);
                saw_values = true;
            }
        }
        if (!saw_values) throw std::runtime_error("no model values in response");
        m.status = SolveStatus::Optimal;
        if (enc.objective_var >= 0) m.objective = m.rval(enc.objective_var);
    }
};

}  // namespace uastl::ir
