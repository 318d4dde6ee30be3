#include "q2seg/lifting.hpp"

#include <algorithm>

#include "q2seg/error.hpp"

namespace q2seg {

LiftTarget::LiftTarget(SSetPtr x) : x_(std::move(x))
{
    for (int c : x_->cells_of_dim(0)) vertices_.push_back(x_->ref(c));
}

const LiftTarget::Level& LiftTarget::level(int n) const
{
    std::lock_guard<std::mutex> lock(mu_);
    if (static_cast<int>(levels_.size()) <= n) levels_.resize(static_cast<std::size_t>(n) + 1);
    auto& slot = levels_[static_cast<std::size_t>(n)];
    if (!slot) {
        auto lvl = std::make_unique<Level>();
        for (const auto& s : x_->simplices(n)) {
            std::vector<SimplexRef> key;
            key.reserve(static_cast<std::size_t>(n) + 1);
            for (int i = 0; i <= n; ++i) key.push_back(x_->face(s, i));
            (*lvl)[std::move(key)].push_back(s);
        }
        slot = std::move(lvl);
    }
    return *slot;
}

const std::vector<SimplexRef>& LiftTarget::candidates(const std::vector<SimplexRef>& faces) const
{
    static const std::vector<SimplexRef> none;
    const int n = static_cast<int>(faces.size()) - 1;
    if (n < 1) throw InvalidArgument("candidates need at least two faces");
    x_->require_dim(n, "lifting target");
    const Level& lvl = level(n);
    auto it = lvl.find(faces);
    return it == lvl.end() ? none : it->second;
}

namespace {

class Extender {
  public:
    Extender(const SSet& b, const LiftTarget& t, Images images, std::uint64_t budget, std::mt19937_64* rng)
        : b_(b), t_(t), images_(std::move(images)), budget_(budget), rng_(rng)
    {
        if (static_cast<int>(images_.size()) != b.size()) throw InvalidArgument("assignment size mismatch");
        // each cell follows its faces, so a bad choice is pruned as early as possible
        free_.reserve(static_cast<std::size_t>(b.size()));
        int top = -1;
        for (int c : b.closure_order())
            if (images_[static_cast<std::size_t>(c)].cell < 0) {
                free_.push_back(c);
                top = std::max(top, b.cell(c).dim);
            }
        if (top >= 0) t.sset()->require_dim(top, "lifting");
    }

    std::uint64_t run(const LiftVisitor& visit)
    {
        visit_ = &visit;
        dfs(0);
        return found_;
    }

  private:
    SimplexRef image_of(const SimplexRef& s) const
    {
        const SimplexRef& base = images_[static_cast<std::size_t>(s.cell)];
        return s.collapse ? t_.sset()->degenerate_by(base, s.degeneracy()) : base;
    }

    bool dfs(std::size_t k)
    {
        if (k == free_.size()) {
            ++found_;
            return (*visit_)(images_);
        }
        const int c = free_[k];
        const int dim = b_.cell(c).dim;
        const std::vector<SimplexRef>* cands;
        if (dim == 0) {
            cands = &t_.vertices();
        } else {
            // candidate lists live in the target, so the scratch may be reused below
            scratch_.clear();
            for (const auto& f : b_.faces(c)) scratch_.push_back(image_of(f));
            cands = &t_.candidates(scratch_);
        }
        std::vector<SimplexRef> shuffled;
        if (rng_ && cands->size() > 1) {
            shuffled = *cands;
            std::shuffle(shuffled.begin(), shuffled.end(), *rng_);
            cands = &shuffled;
        }
        for (const auto& x : *cands) {
            if (++nodes_ > budget_) throw BudgetExceeded("lifting search exceeded its node budget");
            images_[static_cast<std::size_t>(c)] = x;
            if (!dfs(k + 1)) return false;
        }
        images_[static_cast<std::size_t>(c)] = SimplexRef{};
        return true;
    }

    const SSet& b_;
    const LiftTarget& t_;
    Images images_;
    std::vector<int> free_;
    std::vector<SimplexRef> scratch_;
    std::uint64_t budget_;
    std::mt19937_64* rng_;
    const LiftVisitor* visit_ = nullptr;
    std::uint64_t nodes_ = 0;
    std::uint64_t found_ = 0;
};

SSetMap as_map(const SSetPtr& b, const LiftTarget& t, const Images& images) { return {b, t.sset(), images}; }

}  // namespace

std::uint64_t extend_assignments(const SSet& b, const LiftTarget& t, Images fixed, const LiftVisitor& visit,
                                 std::uint64_t budget, std::mt19937_64* rng)
{
    Extender e(b, t, std::move(fixed), budget, rng);
    return e.run(visit);
}

Images fixed_images(const LiftingProblem& p)
{
    if (p.inclusion.domain != p.partial.domain) throw InvalidArgument("lifting problem maps have different domains");
    if (!p.inclusion.is_inclusion()) throw InvalidArgument("lifting problem needs an inclusion");
    Images img(static_cast<std::size_t>(p.inclusion.codomain->size()));
    for (std::size_t a = 0; a < p.inclusion.images.size(); ++a)
        img[static_cast<std::size_t>(p.inclusion.images[a].cell)] = p.partial.images[a];
    return img;
}

std::optional<SSetMap> solve_lifting(const LiftingProblem& p, const LiftTarget& t, std::uint64_t budget)
{
    std::optional<SSetMap> out;
    extend_assignments(*p.inclusion.codomain, t, fixed_images(p), [&](const Images& img) {
        out = as_map(p.inclusion.codomain, t, img);
        return false;
    }, budget);
    return out;
}

std::vector<SSetMap> enumerate_lifts(const LiftingProblem& p, const LiftTarget& t, std::size_t limit,
                                     std::uint64_t budget)
{
    std::vector<SSetMap> out;
    if (limit == 0) return out;
    extend_assignments(*p.inclusion.codomain, t, fixed_images(p), [&](const Images& img) {
        out.push_back(as_map(p.inclusion.codomain, t, img));
        return out.size() < limit;
    }, budget);
    return out;
}

std::uint64_t count_lifts(const LiftingProblem& p, const LiftTarget& t, std::uint64_t limit, std::uint64_t budget)
{
    std::uint64_t n = 0;
    if (limit == 0) return 0;
    extend_assignments(*p.inclusion.codomain, t, fixed_images(p), [&](const Images&) { return ++n < limit; }, budget);
    return n;
}

std::optional<SSetMap> random_lift(const LiftingProblem& p, const LiftTarget& t, std::mt19937_64& rng,
                                   std::uint64_t budget)
{
    std::optional<SSetMap> out;
    extend_assignments(*p.inclusion.codomain, t, fixed_images(p), [&](const Images& img) {
        out = as_map(p.inclusion.codomain, t, img);
        return false;
    }, budget, &rng);
    return out;
}

std::uint64_t for_each_map(const SSetPtr& a, const LiftTarget& t, const LiftVisitor& visit, std::uint64_t budget)
{
    return extend_assignments(*a, t, Images(static_cast<std::size_t>(a->size())), visit, budget);
}

std::optional<SSetMap> random_map(const SSetPtr& a, const LiftTarget& t, std::mt19937_64& rng, std::uint64_t budget)
{
    std::optional<SSetMap> out;
    extend_assignments(*a, t, Images(static_cast<std::size_t>(a->size())), [&](const Images& img) {
        out = as_map(a, t, img);
        return false;
    }, budget, &rng);
    return out;
}

}  // namespace q2seg
