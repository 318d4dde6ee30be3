#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "q2seg/horns.hpp"
#include "q2seg/shapes.hpp"
#include "q2seg/sset.hpp"

namespace q2seg {

// Glues Delta[n] along the generator horn; attach[c] is the image of horn cell c
// in the object built so far.
struct PushoutStep {
    GeneralizedHorn generator;
    std::vector<SimplexRef> attach;
};

struct ComposeStep {};

struct Certificate;

// The claim is a retract of the claim of `through`. f and p act on letters.
struct RetractStep {
    std::shared_ptr<const Certificate> through;
    std::vector<int> f, p;
};

using Step = std::variant<PushoutStep, ComposeStep, RetractStep>;

struct Certificate {
    ShapeSpec claim;
    std::vector<Step> steps;

    int pushout_count() const;
    // Schema "cert/1".
    nlohmann::json to_json() const;
    static Certificate from_json(const nlohmann::json& j);
};

struct VerifyReport {
    bool accepted = false;
    int failed_step = -1;  // -1 when the failure is in the claim or the final comparison
    std::string reason;
    int steps = 0;
    std::vector<int> replayed_counts;

    nlohmann::json to_json() const;
};

// GenHorn (broken present set), Spine2Segal, or IsoHorn. An IsoHorn without
// stages uses the largest stage count its depth can hold.
Certificate certify_anodyne(const ShapeSpec& target);
VerifyReport verify_certificate(const Certificate& c);

// Letter maps f : a -> m and p : m -> a, checked on both rows.
struct RetractCheck {
    bool f_defined = false;
    bool p_defined = false;
    bool left_square = false;
    bool right_square = false;
    bool section = false;  // p o f = id on sub and ambient
    std::string defect;

    bool ok() const { return f_defined && p_defined && left_square && right_square && section; }
};

RetractCheck check_retract(const Shape& a, const Shape& m, const std::vector<int>& f, const std::vector<int>& p);

enum class RetractKind { TwoSegalHornViaOuter, PushoutProductSection, EdgewiseSection };

struct RetractWitness {
    RetractKind kind = RetractKind::TwoSegalHornViaOuter;
    nlohmann::json params;
    ShapeSpec claim;
    std::string middle;
    std::vector<std::string> letters;  // names of the middle letters
    std::vector<int> f, p;
    RetractCheck check;
    // TwoSegalHornViaOuter only.
    std::vector<std::pair<std::vector<int>, GeneralizedHorn>> middle_chain;  // (face vertices, horn)
    std::optional<Certificate> middle_certificate;
    std::optional<VerifyReport> middle_report;
    bool outer_only = false;

    bool ok() const;
    nlohmann::json to_json() const;
};

// 0 < i < j-1 < n-1; the retract runs through Delta[n+1] via d^{n+1} and s^n.
RetractWitness retract_via_outer(int i, int j, int n);
// side 0: Lambda^{0,j}[n] through Lambda^{0,2}[3] box Lambda^{0,j}[n];
// side 1: Lambda^{n-j,n}[n] through Lambda^{1,3}[3] box Lambda^{n-j,n}[n]. 2 <= j < n.
RetractWitness retract_pushout_product(int n, int j, int side);
// side 0: Lambda^{0,j}[k]; side 1: Lambda^{k-j,k}[k]; both through A^{j-1}[2k-1]. 3 <= k, 2 <= j <= k.
RetractWitness retract_edgewise(int k, int j, int side);

struct PushoutJoinResult {
    SSetPtr join;
    SSetMap inclusion;
    std::vector<int> missing;  // codimension-one faces of the top cell not in the sub
    Shape horn;                // Lambda^{i, n+j+1}[n+k+1]
    std::optional<std::vector<int>> iso;  // ambient cell bijection, if found
    bool broken = false;

    bool ok(int i, int n, int j) const;
    nlohmann::json to_json() const;
};

// (Lambda^i[n] * Delta[k]) u (Delta[n] * Lambda^j[k]) -> Delta[n] * Delta[k]; 0 < j < k.
PushoutJoinResult pushout_join_horn(int i, int n, int j, int k);

}  // namespace q2seg
