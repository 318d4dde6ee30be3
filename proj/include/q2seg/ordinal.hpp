#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace q2seg {

// Collapse masks are 32 bit, so no simplex may exceed this dimension.
inline constexpr int kMaxDim = 31;

// Weakly monotone map [n] -> [m], n = values.size() - 1.
struct OrdinalMap {
    int target_dim = 0;
    std::vector<int> values;

    OrdinalMap() = default;
    OrdinalMap(int target, std::vector<int> vals);

    int source_dim() const { return static_cast<int>(values.size()) - 1; }
    int operator()(int k) const { return values[static_cast<std::size_t>(k)]; }

    bool injective() const;
    bool surjective() const;
    bool is_identity() const;
    std::string str() const;

    static OrdinalMap identity(int n);
    // d^i : [n-1] -> [n], skips i.
    static OrdinalMap coface(int n, int i);
    // s^i : [n+1] -> [n], hits i twice.
    static OrdinalMap codegeneracy(int n, int i);
    // Injection [k] -> [n] with the given sorted image.
    static OrdinalMap from_image(int n, const std::vector<int>& image);

    friend bool operator==(const OrdinalMap&, const OrdinalMap&) = default;
};

// g after f.
OrdinalMap compose(const OrdinalMap& g, const OrdinalMap& f);

// Surjection [m] ->> [k]; bit t of mask set iff t and t+1 have the same image.
class DegeneracyOp {
  public:
    DegeneracyOp() = default;
    DegeneracyOp(int source_dim, std::uint32_t mask);

    static DegeneracyOp identity(int n) { return {n, 0}; }
    static DegeneracyOp from_indices(int source_dim, const std::vector<int>& collapsed);
    static DegeneracyOp from_surjection(const OrdinalMap& s);

    int source_dim() const { return m_; }
    int target_dim() const;
    std::uint32_t mask() const { return mask_; }
    bool is_identity() const { return mask_ == 0; }
    std::vector<int> collapsed_indices() const;
    OrdinalMap surjection() const;

    friend bool operator==(const DegeneracyOp&, const DegeneracyOp&) = default;

  private:
    int m_ = 0;
    std::uint32_t mask_ = 0;
};

// Unique f = inj o surj.
std::pair<DegeneracyOp, OrdinalMap> ordinal_factorize(const OrdinalMap& f);

// Enumerates every monotone map [n] -> [m] in lexicographic order.
std::vector<OrdinalMap> all_monotone(int n, int m);

int popcount32(std::uint32_t x);

}  // namespace q2seg
