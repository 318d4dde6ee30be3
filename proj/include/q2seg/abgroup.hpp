#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace q2seg {

// Z/f_1 + ... + Z/f_r with f_1 | f_2 | ... | f_r and f_1 >= 2; no factors is the trivial group.
struct FinAbGroup {
    std::vector<int> factors;

    // Invariant factors of the sum of the given cyclic groups.
    static FinAbGroup from_cyclic(const std::vector<int>& orders);
    // Throws unless the factors are already in invariant form.
    static FinAbGroup from_factors(std::vector<int> factors);

    int rank() const { return static_cast<int>(factors.size()); }
    int order() const;
    bool trivial() const { return factors.empty(); }
    // Mixed radix, first coordinate fastest.
    int encode(const std::vector<int>& x) const;
    std::vector<int> decode(int e) const;
    int add(int a, int b) const;
    int negate(int a) const;
    std::string name() const;

    friend bool operator==(const FinAbGroup&, const FinAbGroup&) = default;
    friend auto operator<=>(const FinAbGroup&, const FinAbGroup&) = default;
};

// One group per isomorphism class, ordered by (order, factors).
std::vector<FinAbGroup> groups_up_to(int max_order);

// Integer matrix, row r reduced mod the r-th factor of the target; column c is
// the image of the c-th generator of the source.
struct AbHom {
    FinAbGroup src, dst;
    std::vector<int> m;  // row-major, dst.rank() x src.rank()

    int at(int r, int c) const { return m[static_cast<std::size_t>(r * src.rank() + c)]; }
    // Empty iff generator orders annihilate their images.
    std::string defect() const;
    int apply(int e) const;
    std::vector<int> table() const;
    std::vector<int> kernel() const;  // sorted element codes
    std::vector<int> image() const;   // sorted element codes
    bool injective() const;
    bool surjective() const;
    std::string str() const;

    friend bool operator==(const AbHom&, const AbHom&) = default;
};

AbHom hom_identity(const FinAbGroup& g);
AbHom hom_zero(const FinAbGroup& src, const FinAbGroup& dst);
// g after f.
AbHom hom_compose(const AbHom& g, const AbHom& f);
// Every well-defined hom, in lexicographic matrix order.
std::vector<AbHom> all_homs(const FinAbGroup& src, const FinAbGroup& dst);
std::vector<AbHom> automorphisms(const FinAbGroup& g);

}  // namespace q2seg
