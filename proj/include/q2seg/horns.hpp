#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace q2seg {

// S subset of {0..n} as a bitmask.
bool is_broken(std::uint32_t s, int n);
bool is_broken(const std::vector<int>& s, int n);

// Generalized horn, stored by its present faces.
struct GeneralizedHorn {
    int n = 0;
    std::uint32_t present = 0;

    static GeneralizedHorn from_missing(int n, const std::vector<int>& missing);
    static GeneralizedHorn from_present(int n, const std::vector<int>& present);

    std::uint32_t missing_mask() const;
    std::vector<int> missing() const;
    std::vector<int> present_faces() const;
    bool is_two_segal() const;
    std::string name() const;

    friend bool operator==(const GeneralizedHorn&, const GeneralizedHorn&) = default;
};

std::vector<GeneralizedHorn> enumerate_two_segal_horns(int n);

using Triangle = std::array<int, 3>;

// Triangles sorted, each with increasing vertices.
struct Triangulation {
    int n = 0;
    std::vector<Triangle> triangles;

    friend bool operator==(const Triangulation&, const Triangulation&) = default;
};

Triangulation make_triangulation(int n, std::vector<Triangle> triangles);
// Empty iff valid.
std::string triangulation_defect(const Triangulation& t);
std::vector<Triangulation> enumerate_triangulations(int n);
std::vector<int> extreme_vertices(const Triangulation& t);
Triangulation triangulation_with_extremes(int n, int i, int j);
std::string triangulation_name(const Triangulation& t);

}  // namespace q2seg
