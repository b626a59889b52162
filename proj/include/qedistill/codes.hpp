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

#ifndef QEDISTILL_CODES_HPP
#define QEDISTILL_CODES_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qed {

enum class Basis : uint8_t { X, Y, Z };

char basis_char(Basis b);
Basis basis_from_char(char c);

// Pauli operator on n qubits in symplectic form, bit-packed. Phases are dropped.
class PauliOp {
   public:
    PauliOp() = default;
    explicit PauliOp(size_t n);

    // Accepts "IXYZ" style strings; '_' is also read as identity.
    static PauliOp from_str(std::string_view s);
    static PauliOp single(size_t n, size_t q, char p);
    static PauliOp uniform(size_t n, char p);

    size_t size() const { return n_; }
    bool x(size_t q) const { return (xs_[q >> 6] >> (q & 63)) & 1; }
    bool z(size_t q) const { return (zs_[q >> 6] >> (q & 63)) & 1; }
    void set_x(size_t q, bool v);
    void set_z(size_t q, bool v);
    // 'I', 'X', 'Y' or 'Z'.
    char at(size_t q) const;
    void set(size_t q, char p);

    bool is_identity() const;
    size_t weight() const;
    std::string str() const;

    // Product up to phase.
    PauliOp &operator*=(const PauliOp &other);
    PauliOp operator*(const PauliOp &other) const;
    bool operator==(const PauliOp &other) const = default;

    // Symplectic inner product: 1 iff the operators anticommute.
    bool anticommutes(const PauliOp &other) const;

    const std::vector<uint64_t> &x_words() const { return xs_; }
    const std::vector<uint64_t> &z_words() const { return zs_; }

   private:
    size_t n_ = 0;
    std::vector<uint64_t> xs_;
    std::vector<uint64_t> zs_;
};

// Rank over GF(2) of the symplectic vectors (x|z) of the operators.
size_t gf2_rank(const std::vector<PauliOp> &ops);
bool in_span(const std::vector<PauliOp> &generators, const PauliOp &p);

struct StabilizerCode {
    size_t n = 0;
    size_t k = 0;
    size_t d = 0;
    std::vector<PauliOp> stabilizers;
    std::vector<PauliOp> logical_x;
    std::vector<PauliOp> logical_z;
};

// Throws std::invalid_argument unless the commutation table of a code is
// that of a valid stabilizer code with a symplectic logical basis.
void validate_code(const StabilizerCode &code);

StabilizerCode parity_code(size_t n);
StabilizerCode repetition_code(size_t n, Basis basis);

// Applies the single-qubit relabeling that sends Z to the given basis (swapping
// the other two letters' roles) to every qubit. Z leaves the operator unchanged.
PauliOp relabel(const PauliOp &p, Basis to);

std::vector<bool> syndrome(const StabilizerCode &code, const PauliOp &e);

// Class of a syndrome-free error in N(S)/S as a k-qubit Pauli. The returned
// operator is the identity exactly when e is in the stabilizer group.
PauliOp logical_effect(const StabilizerCode &code, const PauliOp &e);

enum class CodeKind : uint8_t { Repetition, QuantumParity, QuantumHamming, Catalog };

struct CodeSpec {
    CodeKind kind = CodeKind::Catalog;
    int n = 0;
    int k = 0;
    int d = 0;
    Basis basis = Basis::Z;  // only meaningful for Repetition
    std::string label;

    static CodeSpec repetition(int n, Basis basis);
    static CodeSpec quantum_parity(int n);
    static CodeSpec quantum_hamming(int r);
    static CodeSpec catalog(int n, int k, int d, std::string label = "");
    // Picks the parity or Hamming family when (n,k,d) matches one, else Catalog.
    static CodeSpec quantum(int n, int k, int d);

    bool is_classical() const { return kind == CodeKind::Repetition; }
    bool is_simulable() const { return kind == CodeKind::Repetition || kind == CodeKind::QuantumParity; }
    // Sequence-grammar token: "r3X" or "q4.2.2".
    std::string id() const;
    // Family-aware name used in reports, e.g. "parity(4)" or "[[17,9,4]]".
    std::string describe() const;

    bool operator==(const CodeSpec &other) const;
};

StabilizerCode build_code(const CodeSpec &spec);

struct SequenceParseError : std::invalid_argument {
    size_t position;
    SequenceParseError(const std::string &msg, size_t pos);
};

// Comma-separated tokens, case-insensitive: r<n><basis> or q<n>.<k>.<d>.
// An empty or all-whitespace string is the empty sequence.
std::vector<CodeSpec> parse_sequence(std::string_view text);
std::string format_sequence(const std::vector<CodeSpec> &seq);

struct CatalogError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CodeCatalog {
    std::vector<CodeSpec> entries;
    std::string provenance;
};

// Generated families: parity n=4..40 even, Hamming r=3..6, repetition n=2..12 in X,Y,Z.
std::vector<CodeSpec> generated_families();

CodeCatalog parse_catalog(std::string_view text, const std::string &provenance, bool with_families = true);
CodeCatalog load_catalog(const std::string &path, bool with_families = true);
CodeCatalog load_builtin_catalog(bool with_families = true);

// Raw text of the catalog file shipped with the library.
std::string_view builtin_catalog_text();

}  // namespace qed

#endif
