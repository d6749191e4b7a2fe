#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ringdens/rational.hpp"

namespace ringdens::quadfield {

/// Kronecker symbol (a | m); for odd prime m this is the Legendre symbol, and
/// (a | 2) follows the mod-8 character (0 for even a, +1 for a = +-1 mod 8,
/// -1 for a = +-5 mod 8).
int kronecker(const Integer& a, const Integer& m);

/// Discriminant of Q(sqrt(m)) for squarefree m != 0, 1.
Integer fundamental_discriminant(const Integer& m);

bool is_fundamental_discriminant(const Integer& d);

enum class SplitType { split, inert, ramified };

struct Splitting {
    SplitType type;
    int r;  // number of primes above p: 2 split, 1 inert, 1 ramified
};

Splitting splitting_type(const Integer& d_K, std::uint64_t p);

/// Integral binary quadratic form a x^2 + b xy + c y^2 of discriminant
/// b^2 - 4ac = d_K < 0, with a > 0.
struct QuadraticForm {
    Integer a, b, c;
    Integer discriminant() const { return b * b - 4 * a * c; }
    bool operator==(const QuadraticForm&) const = default;
    bool operator<(const QuadraticForm& o) const {
        if (a != o.a) return a < o.a;
        if (b != o.b) return b < o.b;
        return c < o.c;
    }
};

bool is_reduced(const QuadraticForm& f);
QuadraticForm reduce(QuadraticForm f);

/// Gauss composition of two forms of the same fundamental discriminant;
/// returns the reduced representative of the composed class.
QuadraticForm compose(const QuadraticForm& f, const QuadraticForm& g);

struct ClassGroupTable {
    Integer d_K;
    std::vector<QuadraticForm> forms;  // all reduced forms, sorted
    int h = 0;
    int principal_index = 0;
    /// composition[i][j] = index of forms[i] * forms[j] (filled on demand).
    std::vector<std::vector<int>> composition;

    int index_of(const QuadraticForm& f) const;
    int inverse_of(int i) const;
    void ensure_composition();
};

/// All reduced forms of fundamental discriminant d_K < 0 by the
/// a <= sqrt(|d_K|/3) scan; h = count.
ClassGroupTable reduced_forms(const Integer& d_K, std::uint64_t budget = 1u << 26);

/// Order of the ideal class above p; nullopt marks an inert prime (the class
/// of (p) is principal).
std::optional<int> prime_class_order(const Integer& d_K, std::uint64_t p, ClassGroupTable& table);

/// Primes p < N with some prime of O_K above p whose t-th power is not
/// principal.  For split and ramified p this is: class order does not
/// divide t.
std::set<std::uint64_t> t_torsion_violators(const Integer& d_K, int t, std::uint64_t N);

/// Bracket of prod over the full violator set of alpha_{p,n}: exact factors
/// below the prime cutoff, tail bracketed by the truncation lemma.
CertifiedInterval torsion_density(const Integer& d_K, int t, int n, const Rational& tol);

struct CharacterProducts {
    CertifiedInterval f_n;  // over chi_p(d_K) in {0, 1}
    CertifiedInterval g_n;  // over chi_p(d_K) = 1
};

CharacterProducts character_products(const Integer& d_K, int n, std::uint64_t N);

/// CSV rows: d_K, h, form list, and class orders of primes below prime_bound.
std::string class_table_csv(ClassGroupTable& table, std::uint64_t prime_bound);

}  // namespace ringdens::quadfield
