#pragma once

#include <cctype>
#include <sstream>
#include <string>
#include <vector>

#include "qsteer/circuit.hpp"

namespace qsteer {

struct emission_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct parse_error : std::runtime_error {
    int line;
    int column;
    parse_error(int ln, int col, const std::string& msg)
        : std::runtime_error("qasm parse error at " + std::to_string(ln) + ":" +
                             std::to_string(col) + ": " + msg),
          line(ln), column(col) {}
};

/// Emits OpenQASM 3 text for the IR. Multi-controlled Z is written with
/// control modifiers (`ctrl(k) @ z`) rather than a Toffoli decomposition.
/// Output is deterministic byte-for-byte for identical IR. Opaque Unitary
/// ops have no gate-level decomposition and fail emission.
inline std::string emit_qasm(const CircuitIR& c) {
    std::ostringstream out;
    out << "OPENQASM 3.0;\n";
    out << "qubit[" << c.n_qubits << "] q;\n";
    for (const auto& op : c.ops) {
        switch (op.kind) {
        case OpKind::H: out << "h q[" << op.qubits[0] << "];\n"; break;
        case OpKind::X: out << "x q[" << op.qubits[0] << "];\n"; break;
        case OpKind::Z: out << "z q[" << op.qubits[0] << "];\n"; break;
        case OpKind::CZ:
            out << "ctrl @ z q[" << op.qubits[0] << "], q[" << op.qubits[1] << "];\n";
            break;
        case OpKind::MCZ: {
            const std::size_t k = op.qubits.size() - 1;
            if (k == 1) out << "ctrl @ z ";
            else out << "ctrl(" << k << ") @ z ";
            for (std::size_t i = 0; i < op.qubits.size(); ++i)
                out << (i ? ", " : "") << "q[" << op.qubits[i] << "]";
            out << ";\n";
            break;
        }
        case OpKind::Unitary:
            throw emission_error("opaque unitary '" + op.label +
                                 "' has no gate decomposition and cannot be emitted");
        }
    }
    return out.str();
}

namespace detail {

struct QasmCursor {
    const std::string& text;
    std::size_t pos = 0;
    int line = 1;
    int col = 1;

    explicit QasmCursor(const std::string& t) : text(t) {}

    bool eof() const { return pos >= text.size(); }
    char peek() const { return text[pos]; }

    void advance() {
        if (text[pos] == '\n') { ++line; col = 1; }
        else ++col;
        ++pos;
    }
    void skip_space() {
        while (!eof()) {
            if (std::isspace(static_cast<unsigned char>(peek()))) { advance(); continue; }
            if (peek() == '/' && pos + 1 < text.size() && text[pos + 1] == '/') {
                while (!eof() && peek() != '\n') advance();
                continue;
            }
            break;
        }
    }
    [[noreturn]] void fail(const std::string& msg) const {
        throw parse_error(line, col, msg);
    }
    std::string token() {
        skip_space();
        if (eof()) fail("unexpected end of input");
        std::size_t start = pos;
        if (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_' || peek() == '.') {
            while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) ||
                              peek() == '_' || peek() == '.'))
                advance();
        } else {
            advance();
        }
        return text.substr(start, pos - start);
    }
    void expect(const std::string& want) {
        const int ln = line, cl = col;
        skip_space();
        const std::string got = token();
        if (got != want)
            throw parse_error(ln, cl, "expected '" + want + "', got '" + got + "'");
    }
    int integer() {
        skip_space();
        const int ln = line, cl = col;
        const std::string t = token();
        for (char ch : t)
            if (!std::isdigit(static_cast<unsigned char>(ch)))
                throw parse_error(ln, cl, "expected integer, got '" + t + "'");
        return std::stoi(t);
    }
};

inline int qubit_operand(QasmCursor& cur, int n) {
    cur.expect("q");
    cur.expect("[");
    const int idx = cur.integer();
    cur.expect("]");
    if (idx < 0 || idx >= n) cur.fail("qubit index " + std::to_string(idx) + " out of range");
    return idx;
}

} // namespace detail

/// Parses exactly the emitter's OpenQASM 3 subset: a version line, one
/// qubit declaration, and h/x/z statements plus ctrl-modified z.
inline CircuitIR parse_qasm(const std::string& text) {
    detail::QasmCursor cur(text);
    cur.expect("OPENQASM");
    {
        cur.skip_space();
        const int ln = cur.line, cl = cur.col;
        const std::string v = cur.token();
        if (v != "3.0" && v != "3") throw parse_error(ln, cl, "unsupported version '" + v + "'");
    }
    cur.expect(";");
    cur.expect("qubit");
    cur.expect("[");
    const int n = cur.integer();
    cur.expect("]");
    if (n < 1 || n > kMaxQubits) cur.fail("qubit count out of range");
    cur.expect("q");
    cur.expect(";");

    CircuitIR c{n, {}, false};
    while (true) {
        cur.skip_space();
        if (cur.eof()) break;
        const int ln = cur.line, cl = cur.col;
        const std::string head = cur.token();
        if (head == "h" || head == "x" || head == "z") {
            const int q = detail::qubit_operand(cur, n);
            cur.expect(";");
            if (head == "h") c.ops.push_back(CircuitOp::h(q));
            else if (head == "x") c.ops.push_back(CircuitOp::x(q));
            else c.ops.push_back(CircuitOp::z(q));
        } else if (head == "ctrl") {
            int controls = 1;
            cur.skip_space();
            if (!cur.eof() && cur.peek() == '(') {
                cur.expect("(");
                controls = cur.integer();
                cur.expect(")");
                if (controls < 1) cur.fail("control count must be >= 1");
            }
            cur.expect("@");
            {
                const int gl = cur.line, gc = cur.col;
                const std::string base = cur.token();
                if (base != "z")
                    throw parse_error(gl, gc, "unsupported controlled gate '" + base + "'");
            }
            std::vector<int> qs;
            qs.push_back(detail::qubit_operand(cur, n));
            for (int i = 0; i < controls; ++i) {
                cur.expect(",");
                qs.push_back(detail::qubit_operand(cur, n));
            }
            cur.expect(";");
            if (qs.size() == 2) c.ops.push_back(CircuitOp::cz(qs[0], qs[1]));
            else c.ops.push_back(CircuitOp::mcz(qs));
        } else {
            throw parse_error(ln, cl, "unsupported statement '" + head + "'");
        }
    }
    return c;
}

/// Parse + simulate convenience wrapper: the transformer the emitted text
/// denotes, applied to a state.
inline StateVector evaluate_qasm(const std::string& text, StateVector input) {
    const CircuitIR c = parse_qasm(text);
    apply_circuit(input, c);
    return input;
}

} // namespace qsteer
