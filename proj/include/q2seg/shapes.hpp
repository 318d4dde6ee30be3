#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "q2seg/horns.hpp"
#include "q2seg/sset.hpp"

namespace q2seg {

using Word = std::vector<int>;

// Nerve of a preorder on {0..letters-1}, restricted to a subword-closed family.
// Nondegenerate simplices are words without adjacent repeats.
struct WordComplex {
    SSetPtr sset;
    std::vector<Word> words;  // per cell
    std::map<Word, int> index;

    int id(const Word& w) const;
    // Degenerate words are accepted; the result is in EZ form.
    SimplexRef simplex(const Word& w) const;
};

using ArrowFn = std::function<bool(int, int)>;
using MemberFn = std::function<bool(const Word&)>;

WordComplex word_complex(int letters, const ArrowFn& arrow, const MemberFn& member, int depth, bool finite);

// Downward-closed family of subsets of {0..n}, given by facets.
WordComplex simplicial_complex(int n, const std::vector<std::vector<int>>& facets);

bool is_subword(const Word& small, const Word& big);
std::string word_label(const Word& w);

enum class ShapeKind {
    Delta,
    Boundary,
    Horn,
    GenHorn,
    Spine2Segal,
    Spine1,
    IsoHorn,
    Isoplex,
    EdgewiseA,
    EdgewiseI,
    JTrunc,
    Complex,
};

struct ShapeSpec {
    ShapeKind kind = ShapeKind::Delta;
    int n = 0;
    int i = 0;
    int depth = 0;
    int stages = -1;  // IsoHorn only: ambient is V u B_stages when >= 0
    std::vector<int> missing;
    std::vector<Triangle> triangles;
    std::vector<std::vector<int>> facets;

    static ShapeSpec delta(int n);
    static ShapeSpec boundary(int n);
    static ShapeSpec horn(int n, int missing);
    static ShapeSpec genhorn(int n, std::vector<int> missing);
    static ShapeSpec spine(const Triangulation& t);
    static ShapeSpec spine1(int n);
    static ShapeSpec isohorn(int n, int i, int depth, int stages = -1);
    static ShapeSpec isoplex(int n, int i, int depth);
    static ShapeSpec edgewise_a(int n, int i);
    static ShapeSpec edgewise_i(int n);
    static ShapeSpec jtrunc(int depth);
    static ShapeSpec complex(int n, std::vector<std::vector<int>> facets);

    nlohmann::json to_json() const;
    static ShapeSpec from_json(const nlohmann::json& j);
};

struct Shape {
    WordComplex sub;
    WordComplex ambient;
    SSetMap inclusion;
};

Shape build_shape(const ShapeSpec& spec);

// Sub must be contained in ambient.
Shape make_shape(int letters, const ArrowFn& arrow, const MemberFn& sub_member, const MemberFn& amb_member, int depth,
                 bool finite);

// The word 0..i, (i+1, i) repeated l times, i+2..n.
Word isohorn_path(int n, int i, int l);

}  // namespace q2seg
