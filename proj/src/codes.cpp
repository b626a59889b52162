// Copyright 2026 The qedistill Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qedistill/codes.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <tuple>

namespace qed {

char basis_char(Basis b) {
    switch (b) {
        case Basis::X:
            return 'X';
        case Basis::Y:
            return 'Y';
        case Basis::Z:
            return 'Z';
    }
    return '?';
}

Basis basis_from_char(char c) {
    switch (std::toupper(static_cast<unsigned char>(c))) {
        case 'X':
            return Basis::X;
        case 'Y':
            return Basis::Y;
        case 'Z':
            return Basis::Z;
    }
    throw std::invalid_argument(std::string("not a basis letter: ") + c);
}

PauliOp::PauliOp(size_t n) : n_(n), xs_((n + 63) / 64, 0), zs_((n + 63) / 64, 0) {
}

PauliOp PauliOp::from_str(std::string_view s) {
    PauliOp p(s.size());
    for (size_t q = 0; q < s.size(); q++) {
        p.set(q, s[q]);
    }
    return p;
}

PauliOp PauliOp::single(size_t n, size_t q, char c) {
    PauliOp p(n);
    p.set(q, c);
    return p;
}

PauliOp PauliOp::uniform(size_t n, char c) {
    PauliOp p(n);
    for (size_t q = 0; q < n; q++) {
        p.set(q, c);
    }
    return p;
}

void PauliOp::set_x(size_t q, bool v) {
    uint64_t m = uint64_t{1} << (q & 63);
    xs_[q >> 6] = v ? (xs_[q >> 6] | m) : (xs_[q >> 6] & ~m);
}

void PauliOp::set_z(size_t q, bool v) {
    uint64_t m = uint64_t{1} << (q & 63);
    zs_[q >> 6] = v ? (zs_[q >> 6] | m) : (zs_[q >> 6] & ~m);
}

char PauliOp::at(size_t q) const {
    return "IXZY"[x(q) | (z(q) << 1)];
}

void PauliOp::set(size_t q, char c) {
    switch (std::toupper(static_cast<unsigned char>(c))) {
        case 'I':
        case '_':
            set_x(q, false);
            set_z(q, false);
            return;
        case 'X':
            set_x(q, true);
            set_z(q, false);
            return;
        case 'Y':
            set_x(q, true);
            set_z(q, true);
            return;
        case 'Z':
            set_x(q, false);
            set_z(q, true);
            return;
    }
    throw std::invalid_argument(std::string("not a Pauli letter: ") + c);
}

bool PauliOp::is_identity() const {
    for (size_t w = 0; w < xs_.size(); w++) {
        if (xs_[w] | zs_[w]) {
            return false;
        }
    }
    return true;
}

size_t PauliOp::weight() const {
    size_t total = 0;
    for (size_t w = 0; w < xs_.size(); w++) {
        total += std::popcount(xs_[w] | zs_[w]);
    }
    return total;
}

std::string PauliOp::str() const {
    std::string out(n_, 'I');
    for (size_t q = 0; q < n_; q++) {
        out[q] = at(q);
    }
    return out;
}

PauliOp &PauliOp::operator*=(const PauliOp &other) {
    if (other.n_ != n_) {
        throw std::invalid_argument("Pauli size mismatch");
    }
    for (size_t w = 0; w < xs_.size(); w++) {
        xs_[w] ^= other.xs_[w];
        zs_[w] ^= other.zs_[w];
    }
    return *this;
}

PauliOp PauliOp::operator*(const PauliOp &other) const {
    PauliOp out = *this;
    out *= other;
    return out;
}

bool PauliOp::anticommutes(const PauliOp &other) const {
    if (other.n_ != n_) {
        throw std::invalid_argument("Pauli size mismatch");
    }
    uint64_t acc = 0;
    for (size_t w = 0; w < xs_.size(); w++) {
        acc ^= (xs_[w] & other.zs_[w]) ^ (zs_[w] & other.xs_[w]);
    }
    return std::popcount(acc) & 1;
}

namespace {

// Row-reduces a list of symplectic vectors in place; returns the pivot rows.
struct Gf2Basis {
    std::vector<PauliOp> rows;
    std::vector<size_t> pivots;  // bit index into the 2n-long (x|z) vector

    static bool bit(const PauliOp &p, size_t b) {
        return b < p.size() ? p.x(b) : p.z(b - p.size());
    }

    // Reduces p against the basis; returns the residue.
    PauliOp reduce(PauliOp p) const {
        for (size_t i = 0; i < rows.size(); i++) {
            if (bit(p, pivots[i])) {
                p *= rows[i];
            }
        }
        return p;
    }

    bool insert(const PauliOp &p) {
        PauliOp r = reduce(p);
        for (size_t b = 0; b < 2 * r.size(); b++) {
            if (bit(r, b)) {
                // Keep previous rows free of the new pivot so reduce() stays one pass.
                for (auto &row : rows) {
                    if (bit(row, b)) {
                        row *= r;
                    }
                }
                rows.push_back(r);
                pivots.push_back(b);
                return true;
            }
        }
        return false;
    }
};

}  // namespace

size_t gf2_rank(const std::vector<PauliOp> &ops) {
    Gf2Basis basis;
    size_t rank = 0;
    for (const auto &p : ops) {
        rank += basis.insert(p);
    }
    return rank;
}

bool in_span(const std::vector<PauliOp> &generators, const PauliOp &p) {
    Gf2Basis basis;
    for (const auto &g : generators) {
        basis.insert(g);
    }
    return basis.reduce(p).is_identity();
}

void validate_code(const StabilizerCode &code) {
    auto fail = [](const std::string &msg) { throw std::invalid_argument("invalid code: " + msg); };
    if (code.n == 0 || code.stabilizers.size() + code.k != code.n) {
        fail("r + k != n");
    }
    if (code.logical_x.size() != code.k || code.logical_z.size() != code.k) {
        fail("logical basis size");
    }
    auto all = code.stabilizers;
    all.insert(all.end(), code.logical_x.begin(), code.logical_x.end());
    all.insert(all.end(), code.logical_z.begin(), code.logical_z.end());
    for (const auto &p : all) {
        if (p.size() != code.n) {
            fail("operator length");
        }
    }
    for (size_t i = 0; i < code.stabilizers.size(); i++) {
        for (size_t j = i + 1; j < code.stabilizers.size(); j++) {
            if (code.stabilizers[i].anticommutes(code.stabilizers[j])) {
                fail("stabilizers anticommute");
            }
        }
        for (size_t j = 0; j < code.k; j++) {
            if (code.stabilizers[i].anticommutes(code.logical_x[j]) ||
                code.stabilizers[i].anticommutes(code.logical_z[j])) {
                fail("logical anticommutes with a stabilizer");
            }
        }
    }
    for (size_t i = 0; i < code.k; i++) {
        for (size_t j = 0; j < code.k; j++) {
            if (code.logical_x[i].anticommutes(code.logical_z[j]) != (i == j)) {
                fail("logical X/Z pairing");
            }
            if (i != j && (code.logical_x[i].anticommutes(code.logical_x[j]) ||
                           code.logical_z[i].anticommutes(code.logical_z[j]))) {
                fail("logical X/X or Z/Z pairing");
            }
        }
    }
    if (gf2_rank(code.stabilizers) != code.stabilizers.size()) {
        fail("stabilizers are dependent");
    }
}

StabilizerCode parity_code(size_t n) {
    if (n < 4 || n % 2) {
        throw std::invalid_argument("parity code needs even n >= 4, got " + std::to_string(n));
    }
    StabilizerCode c;
    c.n = n;
    c.k = n - 2;
    c.d = 2;
    c.stabilizers = {PauliOp::uniform(n, 'X'), PauliOp::uniform(n, 'Z')};
    // Logical pair j lives on qubits (1, j) for X and (0, j) for Z, j >= 2.
    for (size_t j = 2; j < n; j++) {
        PauliOp lx(n);
        lx.set(1, 'X');
        lx.set(j, 'X');
        PauliOp lz(n);
        lz.set(0, 'Z');
        lz.set(j, 'Z');
        c.logical_x.push_back(lx);
        c.logical_z.push_back(lz);
    }
    return c;
}

PauliOp relabel(const PauliOp &p, Basis to) {
    if (to == Basis::Z) {
        return p;
    }
    PauliOp out(p.size());
    for (size_t q = 0; q < p.size(); q++) {
        bool x = p.x(q);
        bool z = p.z(q);
        if (to == Basis::X) {
            out.set_x(q, z);
            out.set_z(q, x);
        } else {
            out.set_x(q, x ^ z);
            out.set_z(q, z);
        }
    }
    return out;
}

StabilizerCode repetition_code(size_t n, Basis basis) {
    if (n < 2) {
        throw std::invalid_argument("repetition code needs n >= 2, got " + std::to_string(n));
    }
    StabilizerCode c;
    c.n = n;
    c.k = 1;
    c.d = n;
    for (size_t i = 0; i + 1 < n; i++) {
        PauliOp s(n);
        s.set(i, 'Z');
        s.set(i + 1, 'Z');
        c.stabilizers.push_back(relabel(s, basis));
    }
    c.logical_z.push_back(relabel(PauliOp::single(n, 0, 'Z'), basis));
    c.logical_x.push_back(relabel(PauliOp::uniform(n, 'X'), basis));
    return c;
}

std::vector<bool> syndrome(const StabilizerCode &code, const PauliOp &e) {
    if (e.size() != code.n) {
        throw std::invalid_argument("error has " + std::to_string(e.size()) + " qubits, code has " +
                                    std::to_string(code.n));
    }
    std::vector<bool> out(code.stabilizers.size());
    for (size_t i = 0; i < out.size(); i++) {
        out[i] = code.stabilizers[i].anticommutes(e);
    }
    return out;
}

PauliOp logical_effect(const StabilizerCode &code, const PauliOp &e) {
    auto s = syndrome(code, e);
    if (std::find(s.begin(), s.end(), true) != s.end()) {
        throw std::invalid_argument("logical_effect needs a trivial syndrome");
    }
    PauliOp out(code.k);
    for (size_t m = 0; m < code.k; m++) {
        out.set_x(m, e.anticommutes(code.logical_z[m]));
        out.set_z(m, e.anticommutes(code.logical_x[m]));
    }
    return out;
}

CodeSpec CodeSpec::repetition(int n, Basis basis) {
    if (n < 2) {
        throw std::invalid_argument("repetition code needs n >= 2");
    }
    return CodeSpec{CodeKind::Repetition, n, 1, n, basis, ""};
}

CodeSpec CodeSpec::quantum_parity(int n) {
    if (n < 4 || n % 2) {
        throw std::invalid_argument("parity code needs even n >= 4");
    }
    return CodeSpec{CodeKind::QuantumParity, n, n - 2, 2, Basis::Z, ""};
}

CodeSpec CodeSpec::quantum_hamming(int r) {
    if (r < 3 || r > 20) {
        throw std::invalid_argument("Hamming code needs 3 <= r <= 20");
    }
    int n = 1 << r;
    return CodeSpec{CodeKind::QuantumHamming, n, n - r - 2, 3, Basis::Z, ""};
}

CodeSpec CodeSpec::catalog(int n, int k, int d, std::string label) {
    if (k < 1 || k >= n) {
        throw std::invalid_argument("catalog code needs 1 <= k < n");
    }
    if (d < 2 || d > n) {
        throw std::invalid_argument("catalog code needs 2 <= d <= n");
    }
    return CodeSpec{CodeKind::Catalog, n, k, d, Basis::Z, std::move(label)};
}

CodeSpec CodeSpec::quantum(int n, int k, int d) {
    if (n >= 4 && n % 2 == 0 && k == n - 2 && d == 2) {
        return quantum_parity(n);
    }
    if (d == 3 && n >= 8 && std::has_single_bit(static_cast<unsigned>(n))) {
        int r = std::countr_zero(static_cast<unsigned>(n));
        if (k == n - r - 2) {
            return quantum_hamming(r);
        }
    }
    return catalog(n, k, d);
}

std::string CodeSpec::id() const {
    if (kind == CodeKind::Repetition) {
        return "r" + std::to_string(n) + basis_char(basis);
    }
    return "q" + std::to_string(n) + "." + std::to_string(k) + "." + std::to_string(d);
}

std::string CodeSpec::describe() const {
    switch (kind) {
        case CodeKind::Repetition:
            return "[" + std::to_string(n) + ",1," + std::to_string(n) + "]_" + basis_char(basis);
        case CodeKind::QuantumParity:
            return "parity(" + std::to_string(n) + ")";
        case CodeKind::QuantumHamming:
            return "hamming(" + std::to_string(std::countr_zero(static_cast<unsigned>(n))) + ")";
        case CodeKind::Catalog:
            break;
    }
    std::string s = "[[" + std::to_string(n) + "," + std::to_string(k) + "," + std::to_string(d) + "]]";
    if (!label.empty()) {
        s += " " + label;
    }
    return s;
}

bool CodeSpec::operator==(const CodeSpec &o) const {
    return kind == o.kind && n == o.n && k == o.k && d == o.d && (kind != CodeKind::Repetition || basis == o.basis);
}

StabilizerCode build_code(const CodeSpec &spec) {
    switch (spec.kind) {
        case CodeKind::Repetition:
            return repetition_code(spec.n, spec.basis);
        case CodeKind::QuantumParity:
            return parity_code(spec.n);
        default:
            throw std::invalid_argument("code " + spec.id() + " carries parameters only and cannot be built");
    }
}

SequenceParseError::SequenceParseError(const std::string &msg, size_t pos)
    : std::invalid_argument(msg + " at position " + std::to_string(pos)), position(pos) {
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

// Parses a run of decimal digits at s[i..]; advances i.
std::optional<int> take_int(std::string_view s, size_t &i) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data() + i, s.data() + s.size(), v);
    if (ec != std::errc() || ptr == s.data() + i) {
        return std::nullopt;
    }
    i = ptr - s.data();
    return v;
}

}  // namespace

std::vector<CodeSpec> parse_sequence(std::string_view text) {
    std::vector<CodeSpec> out;
    if (trim(text).empty()) {
        return out;
    }
    size_t start = 0;
    while (start <= text.size()) {
        size_t end = text.find(',', start);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        std::string_view raw = text.substr(start, end - start);
        size_t lead = 0;
        while (lead < raw.size() && std::isspace(static_cast<unsigned char>(raw[lead]))) {
            lead++;
        }
        std::string_view tok = trim(raw);
        size_t pos = start + lead;
        if (tok.empty()) {
            throw SequenceParseError("empty sequence token", pos);
        }
        char head = static_cast<char>(std::tolower(static_cast<unsigned char>(tok[0])));
        size_t i = 1;
        try {
            if (head == 'r') {
                auto n = take_int(tok, i);
                if (!n || i + 1 != tok.size()) {
                    throw SequenceParseError("expected r<n><X|Y|Z>", pos);
                }
                out.push_back(CodeSpec::repetition(*n, basis_from_char(tok[i])));
            } else if (head == 'q') {
                int v[3];
                for (int f = 0; f < 3; f++) {
                    if (f > 0) {
                        if (i >= tok.size() || tok[i] != '.') {
                            throw SequenceParseError("expected q<n>.<k>.<d>", pos + i);
                        }
                        i++;
                    }
                    auto x = take_int(tok, i);
                    if (!x) {
                        throw SequenceParseError("expected q<n>.<k>.<d>", pos + i);
                    }
                    v[f] = *x;
                }
                if (i != tok.size()) {
                    throw SequenceParseError("trailing characters in code token", pos + i);
                }
                out.push_back(CodeSpec::quantum(v[0], v[1], v[2]));
            } else {
                throw SequenceParseError("code token must start with r or q", pos);
            }
        } catch (const SequenceParseError &) {
            throw;
        } catch (const std::invalid_argument &e) {
            throw SequenceParseError(std::string(e.what()) + " in token '" + std::string(tok) + "'", pos);
        }
        start = end + 1;
    }
    return out;
}

std::string format_sequence(const std::vector<CodeSpec> &seq) {
    std::string out;
    for (const auto &c : seq) {
        if (!out.empty()) {
            out += ',';
        }
        out += c.id();
    }
    return out;
}

std::vector<CodeSpec> generated_families() {
    std::vector<CodeSpec> out;
    for (int n = 4; n <= 40; n += 2) {
        out.push_back(CodeSpec::quantum_parity(n));
    }
    for (int r = 3; r <= 6; r++) {
        out.push_back(CodeSpec::quantum_hamming(r));
    }
    for (int n = 2; n <= 12; n++) {
        for (Basis b : {Basis::X, Basis::Y, Basis::Z}) {
            out.push_back(CodeSpec::repetition(n, b));
        }
    }
    return out;
}

CodeCatalog parse_catalog(std::string_view text, const std::string &provenance, bool with_families) {
    CodeCatalog cat;
    cat.provenance = provenance;
    if (with_families) {
        cat.entries = generated_families();
    }
    std::set<std::tuple<int, int, int>> seen;
    size_t line_no = 0;
    size_t start = 0;
    while (start < text.size()) {
        size_t end = text.find('\n', start);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        std::string_view line = text.substr(start, end - start);
        start = end + 1;
        line_no++;
        if (auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);  // also drops a trailing '\r'
        if (line.empty()) {
            continue;
        }
        auto where = provenance + ":" + std::to_string(line_no) + ": ";
        std::vector<std::string_view> fields;
        size_t f = 0;
        while (true) {
            size_t comma = line.find(',', f);
            fields.push_back(trim(line.substr(f, comma == std::string_view::npos ? std::string_view::npos : comma - f)));
            if (comma == std::string_view::npos) {
                break;
            }
            f = comma + 1;
        }
        if (fields.size() != 3 && fields.size() != 4) {
            throw CatalogError(where + "expected n,k,d[,label]");
        }
        int v[3];
        for (int j = 0; j < 3; j++) {
            size_t i = 0;
            auto x = take_int(fields[j], i);
            if (!x || i != fields[j].size()) {
                throw CatalogError(where + "field " + std::to_string(j + 1) + " is not an integer");
            }
            v[j] = *x;
        }
        std::string label = fields.size() == 4 ? std::string(fields[3]) : "";
        try {
            cat.entries.push_back(CodeSpec::catalog(v[0], v[1], v[2], label));
        } catch (const std::invalid_argument &e) {
            throw CatalogError(where + e.what());
        }
        if (!seen.insert({v[0], v[1], v[2]}).second) {
            throw CatalogError(where + "duplicate entry " + cat.entries.back().id());
        }
    }
    return cat;
}

CodeCatalog load_catalog(const std::string &path, bool with_families) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw CatalogError("cannot open catalog " + path);
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_catalog(buf.str(), path, with_families);
}

CodeCatalog load_builtin_catalog(bool with_families) {
    return parse_catalog(builtin_catalog_text(), "builtin", with_families);
}

}  // namespace qed
