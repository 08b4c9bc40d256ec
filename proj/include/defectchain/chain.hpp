#pragma once

// One-dimensional chain kinematics and Hamiltonian assembly. States are
// sequences of horizontal edge labels; each vertex fuses a vertical strand
// of a fixed simple type into the chain, so consecutive edges are related
// by the fusion rules. Local terms are three-edge stencils assembled in
// exact arithmetic and converted to floating point at the end.

#include <defectchain/fusion_category.hpp>

#include <algorithm>
#include <complex>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace defectchain {

struct Boundary {
    enum class Kind { fixed, free, periodic };
    Kind kind = Kind::free;
    std::string left, right;  // pinned outer edge labels when kind == fixed

    static Boundary fixed(std::string l, std::string r) {
        return Boundary{Kind::fixed, std::move(l), std::move(r)};
    }
    static Boundary free_ends() { return Boundary{Kind::free, "", ""}; }
    static Boundary periodic() { return Boundary{Kind::periodic, "", ""}; }

    bool operator==(const Boundary&) const = default;
};

inline std::string boundary_text(const Boundary& b) {
    switch (b.kind) {
        case Boundary::Kind::fixed:
            return b.left + "," + b.right;
        case Boundary::Kind::free:
            return "free";
        default:
            return "periodic";
    }
}

struct ChainBasis {
    std::size_t n_edges = 0;
    Boundary boundary;
    std::vector<std::string> labels;               // edge alphabet
    std::vector<std::vector<std::size_t>> states;  // lexicographic label-index sequences
    std::string note;  // explanation when the basis is empty by parity

    std::size_t dimension() const { return states.size(); }

    std::size_t index_of(const std::vector<std::size_t>& state) const {
        auto it = std::lower_bound(states.begin(), states.end(), state);
        if (it == states.end() || *it != state)
            throw std::runtime_error("state is not in the chain basis");
        return static_cast<std::size_t>(it - states.begin());
    }
};

// every admissible sequence steps by fusion with the strand label
inline ChainBasis enumerate_chain_basis(const FusionCategory& C, const std::string& strand,
                                        std::size_t n_edges, const Boundary& boundary) {
    if (n_edges < 2)
        throw std::runtime_error("a chain needs at least two edges");
    const std::size_t X = C.index(strand);
    ChainBasis basis;
    basis.n_edges = n_edges;
    basis.boundary = boundary;
    basis.labels = C.labels;

    std::vector<std::size_t> state;
    auto grow = [&](auto&& self, std::size_t depth) -> void {
        if (depth == n_edges) {
            if (boundary.kind == Boundary::Kind::fixed &&
                state.back() != C.index(boundary.right))
                return;
            if (boundary.kind == Boundary::Kind::periodic) {
                const auto& wrap = C.fuse(state.back(), X);
                if (!std::binary_search(wrap.begin(), wrap.end(), state.front()))
                    return;
            }
            basis.states.push_back(state);
            return;
        }
        if (depth == 0) {
            if (boundary.kind == Boundary::Kind::fixed) {
                state.push_back(C.index(boundary.left));
                self(self, 1);
                state.pop_back();
            } else {
                for (std::size_t l = 0; l < C.size(); ++l) {
                    state.push_back(l);
                    self(self, 1);
                    state.pop_back();
                }
            }
            return;
        }
        for (std::size_t next : C.fuse(state.back(), X)) {
            state.push_back(next);
            self(self, depth + 1);
            state.pop_back();
        }
    };
    grow(grow, 0);
    std::sort(basis.states.begin(), basis.states.end());
    if (basis.states.empty())
        basis.note = "no admissible edge sequence connects the boundary labels at this length";
    return basis;
}

// defect-chain alphabet {0, 1, *}: edges alternate between the invertible
// sector and the defect, because every vertex absorbs a vertical defect
inline ChainBasis enumerate_states(std::size_t n_edges, const Boundary& boundary) {
    return enumerate_chain_basis(ising(1), "*", n_edges, boundary);
}

struct TermCounts {
    std::size_t identity = 0;    // one per interior window
    std::size_t coupling = 0;    // diagonal two-neighbour stencils
    std::size_t transverse = 0;  // single-edge flip stencils
    bool uniform = true;         // false when sectors mix stencil patterns

    bool operator==(const TermCounts&) const = default;
};

struct ChainOperator {
    ChainBasis basis;
    std::map<std::pair<std::size_t, std::size_t>, Scalar> exact;
    std::map<std::pair<std::size_t, std::size_t>, std::complex<double>> entries;
    TermCounts terms;

    std::size_t dimension() const { return basis.dimension(); }
};

namespace detail {

inline void chain_accumulate(ChainOperator& op, std::size_t row, std::size_t col,
                             const Scalar& value) {
    if (value.is_zero())
        return;
    auto [it, fresh] = op.exact.emplace(std::make_pair(row, col), value);
    if (!fresh) {
        it->second += value;
        if (it->second.is_zero())
            op.exact.erase(it);
    }
}

// exact Hermiticity of the assembled map, then float conversion
inline void chain_finalize(ChainOperator& op) {
    for (const auto& [key, value] : op.exact) {
        auto mirror = op.exact.find({key.second, key.first});
        if (mirror == op.exact.end() || mirror->second != value.conj())
            throw std::logic_error("assembled chain operator is not Hermitian");
    }
    for (const auto& [key, value] : op.exact)
        op.entries[key] = value.to_complex();
}

} // namespace detail

// generic chain builder: each interior vertex window (prev, mid, next) gets
// the channel-zero projector weight
//   -d_X * conj(F^{next}_{prev,X,X})_{mid,0} * (F^{next}_{prev,X,X})_{mid',0}
// so every local term has eigenvalues {-d_X, 0}
inline ChainOperator golden_chain_hamiltonian(const FusionCategory& C, const std::string& strand,
                                              std::size_t n_sites, const Boundary& boundary) {
    const std::size_t X = C.index(strand);
    const bool ring = boundary.kind == Boundary::Kind::periodic;
    const std::size_t n_edges = ring ? n_sites : n_sites + 1;
    if (n_sites < 2)
        throw std::runtime_error("a chain needs at least two sites");
    ChainOperator op;
    op.basis = enumerate_chain_basis(C, strand, n_edges, boundary);
    if (op.basis.dimension() == 0)
        throw std::runtime_error("empty chain basis: " + op.basis.note);
    Scalar weight = -C.qdim.at(X);

    std::vector<std::size_t> windows;
    if (ring)
        for (std::size_t i = 0; i < n_edges; ++i)
            windows.push_back(i);
    else
        for (std::size_t i = 1; i + 1 < n_edges; ++i)
            windows.push_back(i);

    for (std::size_t col = 0; col < op.basis.dimension(); ++col) {
        const auto& s = op.basis.states[col];
        for (std::size_t i : windows) {
            std::size_t prev = s[(i + n_edges - 1) % n_edges];
            std::size_t next = s[(i + 1) % n_edges];
            Scalar ket = C.fsym(prev, X, X, next, s[i], C.unit);
            if (ket.is_zero())
                continue;
            std::vector<std::size_t> flipped = s;
            for (std::size_t mid : C.fuse(prev, X)) {
                Scalar bra = C.fsym(prev, X, X, next, mid, C.unit);
                if (bra.is_zero())
                    continue;
                flipped[i] = mid;
                detail::chain_accumulate(op, op.basis.index_of(flipped), col,
                                         weight * bra * ket.conj());
            }
        }
    }
    op.terms.identity = windows.size();
    op.terms.uniform = false;  // projector form carries no stencil split
    detail::chain_finalize(op);
    return op;
}

// defect chain over the order-two theory, closed form of the local term:
//   h_i = -(1/sqrt 2) (identity
//                      + (Z+O)  |*><*|  (Z+O)      middle edge a defect
//                      + |*><*| (X+O) |*><*|)      middle edge invertible
// O acts on the forbidden sector and never fires on admissible states
inline ChainOperator defect_chain_hamiltonian(std::size_t n_edges, const Boundary& boundary,
                                              int kappa, const Scalar& o_hat = Scalar()) {
    if (kappa != 1 && kappa != -1)
        throw std::runtime_error("kappa must be +1 or -1");
    if (boundary.kind == Boundary::Kind::periodic)
        throw std::runtime_error("periodic boundary is only supported by the generic builder");
    ChainOperator op;
    op.basis = enumerate_states(n_edges, boundary);
    if (op.basis.dimension() == 0)
        throw std::runtime_error("empty chain basis: " + op.basis.note);
    const std::size_t star = 2;
    Scalar half_norm = -(Scalar::sqrt2() / Scalar::integer(2));  // -(1/sqrt 2)
    auto zvalue = [&](std::size_t label) {
        if (label == star)
            return o_hat;
        return Scalar::integer(label == 0 ? 1 : -1);
    };

    TermCounts first_pattern;
    for (std::size_t col = 0; col < op.basis.dimension(); ++col) {
        const auto& s = op.basis.states[col];
        TermCounts pattern;
        for (std::size_t i = 1; i + 1 < n_edges; ++i) {
            pattern.identity += 1;
            detail::chain_accumulate(op, col, col, half_norm);
            if (s[i] == star) {
                pattern.coupling += 1;
                detail::chain_accumulate(op, col, col,
                                         half_norm * zvalue(s[i - 1]) * zvalue(s[i + 1]));
            } else if (s[i - 1] == star && s[i + 1] == star) {
                pattern.transverse += 1;
                std::vector<std::size_t> flipped = s;
                flipped[i] = 1 - s[i];
                detail::chain_accumulate(op, op.basis.index_of(flipped), col, half_norm);
            }
        }
        if (col == 0)
            first_pattern = pattern;
        else if (!(pattern == first_pattern))
            first_pattern.uniform = false;
    }
    op.terms = first_pattern;
    detail::chain_finalize(op);
    return op;
}

// reference qubit chain -(1/sqrt 2) [ (2n-1) I + sum Z_i Z_{i+1} + sum X_i ]
// with term multiplicities matching the defect-chain stencils: one identity
// per window, one coupling per interior defect edge, one flip per qubit
inline ChainOperator tfim_reference(std::size_t n_qubits) {
    if (n_qubits < 1)
        throw std::runtime_error("the reference chain needs at least one qubit");
    ChainOperator op;
    op.basis.n_edges = n_qubits;
    op.basis.boundary = Boundary::free_ends();
    op.basis.labels = {"0", "1"};
    op.basis.note = "qubit register, most significant bit first";
    std::vector<std::size_t> state(n_qubits, 0);
    for (std::size_t code = 0; code < (std::size_t{1} << n_qubits); ++code) {
        for (std::size_t i = 0; i < n_qubits; ++i)
            state[i] = (code >> (n_qubits - 1 - i)) & 1;
        op.basis.states.push_back(state);
    }
    Scalar half_norm = -(Scalar::sqrt2() / Scalar::integer(2));
    auto zsign = [](std::size_t bit) { return Scalar::integer(bit == 0 ? 1 : -1); };
    for (std::size_t col = 0; col < op.basis.dimension(); ++col) {
        const auto& s = op.basis.states[col];
        Scalar diag = Scalar::integer(static_cast<long long>(2 * n_qubits - 1));
        for (std::size_t i = 0; i + 1 < n_qubits; ++i)
            diag += zsign(s[i]) * zsign(s[i + 1]);
        detail::chain_accumulate(op, col, col, half_norm * diag);
        for (std::size_t i = 0; i < n_qubits; ++i) {
            std::vector<std::size_t> flipped = s;
            flipped[i] = 1 - s[i];
            detail::chain_accumulate(op, op.basis.index_of(flipped), col, half_norm);
        }
    }
    op.terms = TermCounts{2 * n_qubits - 1, n_qubits - 1, n_qubits, true};
    detail::chain_finalize(op);
    return op;
}

} // namespace defectchain
