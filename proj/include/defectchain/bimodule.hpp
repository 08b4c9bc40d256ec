#pragma once

// Bimodules over pointed fusion categories: object set, left/right actions
// by group labels, and the three associator tensors with exact entries.
//
// Associator conventions (m an object, a/b acting labels):
//   assoc_left  (a,b,m): a>(b>m)  = L(a,b,m) * (ab)>m
//   assoc_right (m,a,b): (m<a)<b  = R(m,a,b) * m<(ab)
//   assoc_mid   (a,m,b): a>(m<b)  = C(a,m,b) * (a>m)<b
// The tensors are stored sparsely; every unlisted entry reads as exact 1.

#include <defectchain/fusion_category.hpp>

#include <array>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace defectchain {

inline bool is_pointed(const FusionCategory& C) {
    for (std::size_t a = 0; a < C.size(); ++a)
        for (std::size_t b = 0; b < C.size(); ++b)
            if (C.fuse(a, b).size() != 1)
                return false;
    return true;
}

// the unique label a' with unit in a * a'; requires a pointed category
inline std::size_t inverse_label(const FusionCategory& C, std::size_t a) {
    for (std::size_t b = 0; b < C.size(); ++b)
        if (C.contains(C.unit, a, b))
            return b;
    throw std::runtime_error("label '" + C.labels.at(a) + "' has no inverse");
}

struct Bimodule {
    std::string name;
    std::shared_ptr<const FusionCategory> left_cat, right_cat;
    std::vector<std::string> objects;
    std::vector<std::vector<std::size_t>> left_act;   // left_act[a][m]
    std::vector<std::vector<std::size_t>> right_act;  // right_act[m][a]
    std::map<std::array<std::size_t, 3>, Scalar> assoc_left;
    std::map<std::array<std::size_t, 3>, Scalar> assoc_right;
    std::map<std::array<std::size_t, 3>, Scalar> assoc_mid;
    unsigned scalar_order = 8;

    std::size_t size() const { return objects.size(); }

    std::size_t object_index(const std::string& label) const {
        for (std::size_t i = 0; i < objects.size(); ++i)
            if (objects[i] == label)
                return i;
        throw std::runtime_error("unknown bimodule object '" + label + "'");
    }

    std::size_t act_left(std::size_t a, std::size_t m) const { return left_act.at(a).at(m); }
    std::size_t act_right(std::size_t m, std::size_t a) const { return right_act.at(m).at(a); }

    Scalar assoc_l(std::size_t a, std::size_t b, std::size_t m) const {
        return lookup(assoc_left, {a, b, m});
    }
    Scalar assoc_r(std::size_t m, std::size_t a, std::size_t b) const {
        return lookup(assoc_right, {m, a, b});
    }
    Scalar assoc_c(std::size_t a, std::size_t m, std::size_t b) const {
        return lookup(assoc_mid, {a, m, b});
    }

private:
    Scalar lookup(const std::map<std::array<std::size_t, 3>, Scalar>& tensor,
                  const std::array<std::size_t, 3>& key) const {
        auto it = tensor.find(key);
        return it == tensor.end() ? Scalar::integer(1, scalar_order) : it->second;
    }
};

struct CoherenceReport {
    std::size_t identities_checked = 0;
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

// exhaustive exact check of the bimodule axioms: action laws, unit
// strictness, the two module pentagons, and the two mixed hexagons
inline CoherenceReport check_bimodule(const Bimodule& M) {
    if (!M.left_cat || !M.right_cat)
        throw std::runtime_error("bimodule is missing its acting categories");
    const FusionCategory& A = *M.left_cat;
    const FusionCategory& B = *M.right_cat;
    if (!is_pointed(A) || !is_pointed(B))
        throw std::runtime_error("bimodule actions require pointed acting categories");
    const std::size_t nA = A.size(), nB = B.size(), nM = M.size();
    if (nM == 0)
        throw std::runtime_error("bimodule has no objects");
    if (M.left_act.size() != nA || M.right_act.size() != nM)
        throw std::runtime_error("bimodule action tables have wrong shape");
    for (const auto& row : M.left_act)
        if (row.size() != nM)
            throw std::runtime_error("bimodule left action table has wrong shape");
    for (const auto& row : M.right_act)
        if (row.size() != nB)
            throw std::runtime_error("bimodule right action table has wrong shape");
    for (const auto& row : M.left_act)
        for (std::size_t m : row)
            if (m >= nM)
                throw std::runtime_error("bimodule left action target out of range");
    for (const auto& row : M.right_act)
        for (std::size_t m : row)
            if (m >= nM)
                throw std::runtime_error("bimodule right action target out of range");

    CoherenceReport report;
    auto flag = [&](const std::string& what) { report.violations.push_back(what); };
    auto mul = [](const FusionCategory& C, std::size_t a, std::size_t b) {
        return C.fuse(a, b).at(0);
    };

    // unit actions and per-label bijectivity
    for (std::size_t m = 0; m < nM; ++m) {
        ++report.identities_checked;
        if (M.act_left(A.unit, m) != m)
            flag("left unit moves object " + M.objects[m]);
        ++report.identities_checked;
        if (M.act_right(m, B.unit) != m)
            flag("right unit moves object " + M.objects[m]);
    }
    for (std::size_t a = 0; a < nA; ++a) {
        std::vector<bool> hit(nM, false);
        for (std::size_t m = 0; m < nM; ++m)
            hit[M.act_left(a, m)] = true;
        ++report.identities_checked;
        if (std::find(hit.begin(), hit.end(), false) != hit.end())
            flag("left action of " + A.labels[a] + " is not a bijection");
    }
    for (std::size_t b = 0; b < nB; ++b) {
        std::vector<bool> hit(nM, false);
        for (std::size_t m = 0; m < nM; ++m)
            hit[M.act_right(m, b)] = true;
        ++report.identities_checked;
        if (std::find(hit.begin(), hit.end(), false) != hit.end())
            flag("right action of " + B.labels[b] + " is not a bijection");
    }

    // action composition laws on targets
    for (std::size_t m = 0; m < nM; ++m) {
        for (std::size_t a = 0; a < nA; ++a)
            for (std::size_t b = 0; b < nA; ++b) {
                ++report.identities_checked;
                if (M.act_left(a, M.act_left(b, m)) != M.act_left(mul(A, a, b), m))
                    flag("left action composition fails at (" + A.labels[a] + "," + A.labels[b] +
                         "," + M.objects[m] + ")");
            }
        for (std::size_t a = 0; a < nB; ++a)
            for (std::size_t b = 0; b < nB; ++b) {
                ++report.identities_checked;
                if (M.act_right(M.act_right(m, a), b) != M.act_right(m, mul(B, a, b)))
                    flag("right action composition fails at (" + M.objects[m] + "," + B.labels[a] +
                         "," + B.labels[b] + ")");
            }
        for (std::size_t a = 0; a < nA; ++a)
            for (std::size_t b = 0; b < nB; ++b) {
                ++report.identities_checked;
                if (M.act_left(a, M.act_right(m, b)) != M.act_right(M.act_left(a, m), b))
                    flag("left and right actions fail to commute at (" + A.labels[a] + "," +
                         M.objects[m] + "," + B.labels[b] + ")");
            }
    }

    // strict unit associators
    auto check_unit_entry = [&](const Scalar& v, const std::string& what) {
        ++report.identities_checked;
        if (!(v == Scalar::integer(1, M.scalar_order)))
            flag(what);
    };
    for (std::size_t m = 0; m < nM; ++m) {
        for (std::size_t a = 0; a < nA; ++a) {
            check_unit_entry(M.assoc_l(A.unit, a, m), "left associator with leading unit is not 1");
            check_unit_entry(M.assoc_l(a, A.unit, m), "left associator with trailing unit is not 1");
            check_unit_entry(M.assoc_c(a, m, B.unit), "mixed associator with right unit is not 1");
        }
        for (std::size_t b = 0; b < nB; ++b) {
            check_unit_entry(M.assoc_r(m, B.unit, b), "right associator with leading unit is not 1");
            check_unit_entry(M.assoc_r(m, b, B.unit), "right associator with trailing unit is not 1");
            check_unit_entry(M.assoc_c(A.unit, m, b), "mixed associator with left unit is not 1");
        }
    }

    // left module pentagon:
    //   L(a,b,c>m) L(ab,c,m) = F_A(a,b,c) L(a,bc,m) L(b,c,m)
    for (std::size_t a = 0; a < nA; ++a)
        for (std::size_t b = 0; b < nA; ++b)
            for (std::size_t c = 0; c < nA; ++c) {
                const std::size_t ab = mul(A, a, b), bc = mul(A, b, c);
                const std::size_t abc = mul(A, ab, c);
                Scalar fa = A.fsym(a, b, c, abc, ab, bc);
                for (std::size_t m = 0; m < nM; ++m) {
                    ++report.identities_checked;
                    Scalar lhs = M.assoc_l(a, b, M.act_left(c, m)) * M.assoc_l(ab, c, m);
                    Scalar rhs = fa * M.assoc_l(a, bc, m) * M.assoc_l(b, c, m);
                    if (!(lhs == rhs))
                        flag("left pentagon fails at (" + A.labels[a] + "," + A.labels[b] + "," +
                             A.labels[c] + "," + M.objects[m] + ")");
                }
            }

    // right module pentagon:
    //   F_B(a,b,c) R(m,ab,c) R(m,a,b) = R(m,a,bc) R(m<a,b,c)
    for (std::size_t a = 0; a < nB; ++a)
        for (std::size_t b = 0; b < nB; ++b)
            for (std::size_t c = 0; c < nB; ++c) {
                const std::size_t ab = mul(B, a, b), bc = mul(B, b, c);
                const std::size_t abc = mul(B, ab, c);
                Scalar fb = B.fsym(a, b, c, abc, ab, bc);
                for (std::size_t m = 0; m < nM; ++m) {
                    ++report.identities_checked;
                    Scalar lhs = fb * M.assoc_r(m, ab, c) * M.assoc_r(m, a, b);
                    Scalar rhs = M.assoc_r(m, a, bc) * M.assoc_r(M.act_right(m, a), b, c);
                    if (!(lhs == rhs))
                        flag("right pentagon fails at (" + M.objects[m] + "," + B.labels[a] + "," +
                             B.labels[b] + "," + B.labels[c] + ")");
                }
            }

    // mixed hexagon, two left actions against one right:
    //   C(b,m,c) C(a,b>m,c) L(a,b,m) = L(a,b,m<c) C(ab,m,c)
    for (std::size_t a = 0; a < nA; ++a)
        for (std::size_t b = 0; b < nA; ++b)
            for (std::size_t c = 0; c < nB; ++c)
                for (std::size_t m = 0; m < nM; ++m) {
                    ++report.identities_checked;
                    Scalar lhs =
                        M.assoc_c(b, m, c) * M.assoc_c(a, M.act_left(b, m), c) * M.assoc_l(a, b, m);
                    Scalar rhs = M.assoc_l(a, b, M.act_right(m, c)) * M.assoc_c(mul(A, a, b), m, c);
                    if (!(lhs == rhs))
                        flag("mixed hexagon (left pair) fails at (" + A.labels[a] + "," +
                             A.labels[b] + "," + M.objects[m] + "," + B.labels[c] + ")");
                }

    // mixed hexagon, one left action against two rights:
    //   C(a,m<b,c) C(a,m,b) R(a>m,b,c) = R(m,b,c) C(a,m,bc)
    for (std::size_t a = 0; a < nA; ++a)
        for (std::size_t b = 0; b < nB; ++b)
            for (std::size_t c = 0; c < nB; ++c)
                for (std::size_t m = 0; m < nM; ++m) {
                    ++report.identities_checked;
                    Scalar lhs = M.assoc_c(a, M.act_right(m, b), c) * M.assoc_c(a, m, b) *
                                 M.assoc_r(M.act_left(a, m), b, c);
                    Scalar rhs = M.assoc_r(m, b, c) * M.assoc_c(a, m, mul(B, b, c));
                    if (!(lhs == rhs))
                        flag("mixed hexagon (right pair) fails at (" + A.labels[a] + "," +
                             M.objects[m] + "," + B.labels[b] + "," + B.labels[c] + ")");
                }

    return report;
}

namespace detail {

inline unsigned parse_catalog_param(const std::string& name, std::size_t prefix_len, unsigned p) {
    if (name.size() == prefix_len)
        throw std::runtime_error("bimodule name '" + name + "' is missing its parameter");
    unsigned long v = 0;
    for (std::size_t i = prefix_len; i < name.size(); ++i) {
        char ch = name[i];
        if (ch < '0' || ch > '9')
            throw std::runtime_error("bimodule name '" + name + "' has a malformed parameter");
        v = v * 10 + static_cast<unsigned long>(ch - '0');
        if (v > 1000000)
            throw std::runtime_error("bimodule parameter in '" + name + "' is out of range");
    }
    return static_cast<unsigned>(v % p);
}

} // namespace detail

// the standard bimodules of the mod-p group category: the trivial bimodule
// "T" on p^2 objects, the one-sided shifts "L" and "R", the invertible
// twists "X<k>", and the one-object bimodules "F<q>" whose mixed associator
// is the bicharacter exp(2*pi*i*q*a*b/p)
inline Bimodule catalog_bimodule(unsigned p, const std::string& name) {
    if (p == 0)
        throw std::runtime_error("group order must be positive");
    const unsigned order = std::lcm(8u, p);
    auto cat = std::make_shared<const FusionCategory>(vec_zp(p, order));
    Bimodule M;
    M.name = name;
    M.left_cat = cat;
    M.right_cat = cat;
    M.scalar_order = order;

    auto shift_objects = [&]() {
        for (unsigned g = 0; g < p; ++g)
            M.objects.push_back(std::to_string(g));
    };

    if (name == "T") {
        for (unsigned g = 0; g < p; ++g)
            for (unsigned h = 0; h < p; ++h)
                M.objects.push_back("(" + std::to_string(g) + "," + std::to_string(h) + ")");
        M.left_act.assign(p, std::vector<std::size_t>(p * p));
        M.right_act.assign(p * p, std::vector<std::size_t>(p));
        for (unsigned a = 0; a < p; ++a)
            for (unsigned g = 0; g < p; ++g)
                for (unsigned h = 0; h < p; ++h) {
                    M.left_act[a][g * p + h] = ((g + a) % p) * p + h;
                    M.right_act[g * p + h][a] = g * p + (h + a) % p;
                }
        return M;
    }
    if (name == "L" || name == "R") {
        shift_objects();
        M.left_act.assign(p, std::vector<std::size_t>(p));
        M.right_act.assign(p, std::vector<std::size_t>(p));
        for (unsigned a = 0; a < p; ++a)
            for (unsigned g = 0; g < p; ++g) {
                M.left_act[a][g] = name == "L" ? g : (g + a) % p;
                M.right_act[g][a] = name == "L" ? (g + a) % p : g;
            }
        return M;
    }
    if (name.size() >= 1 && name[0] == 'X') {
        const unsigned k = detail::parse_catalog_param(name, 1, p);
        shift_objects();
        M.left_act.assign(p, std::vector<std::size_t>(p));
        M.right_act.assign(p, std::vector<std::size_t>(p));
        for (unsigned a = 0; a < p; ++a)
            for (unsigned h = 0; h < p; ++h) {
                M.left_act[a][h] = (h + a) % p;
                M.right_act[h][a] = (h + k * a) % p;
            }
        return M;
    }
    if (name.size() >= 1 && name[0] == 'F') {
        const unsigned q = detail::parse_catalog_param(name, 1, p);
        M.objects = {"*"};
        M.left_act.assign(p, std::vector<std::size_t>(1, 0));
        M.right_act.assign(1, std::vector<std::size_t>(p, 0));
        if (q != 0)
            for (unsigned a = 0; a < p; ++a)
                for (unsigned b = 0; b < p; ++b) {
                    unsigned e = (q * a * b) % p;
                    if (e != 0)
                        M.assoc_mid[{a, 0, b}] =
                            Scalar::root_of_unity(order, static_cast<long long>(e) * (order / p));
                }
        return M;
    }
    throw std::runtime_error("unknown bimodule name '" + name + "'");
}

// the distinct catalog entries for a given p (X0 and F0 duplicate R and the
// plain one-object bimodule, so X starts at 1)
inline std::vector<std::string> catalog_names(unsigned p) {
    if (p == 0)
        throw std::runtime_error("group order must be positive");
    std::vector<std::string> names = {"T", "L", "R"};
    for (unsigned q = 0; q < p; ++q)
        names.push_back("F" + std::to_string(q));
    for (unsigned k = 1; k < p; ++k)
        names.push_back("X" + std::to_string(k));
    return names;
}

} // namespace defectchain
