#include "q2seg/abgroup.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "q2seg/error.hpp"

namespace q2seg {

namespace {

int mod(long long a, int m)
{
    const long long r = a % m;
    return static_cast<int>(r < 0 ? r + m : r);
}

void extend_factor_lists(std::vector<int>& cur, int prod, int max_order, std::vector<FinAbGroup>& out)
{
    out.push_back({cur});
    const int lo = cur.empty() ? 2 : cur.back();
    for (int f = lo; prod * f <= max_order; ++f) {
        if (!cur.empty() && f % cur.back() != 0) continue;
        cur.push_back(f);
        extend_factor_lists(cur, prod * f, max_order, out);
        cur.pop_back();
    }
}

}  // namespace

FinAbGroup FinAbGroup::from_cyclic(const std::vector<int>& orders)
{
    // prime -> exponents of the prime-power parts
    std::map<int, std::vector<int>> parts;
    for (int n : orders) {
        if (n < 1) throw InvalidArgument("cyclic order must be positive");
        for (int p = 2; n > 1; ++p) {
            int q = 1;
            while (n % p == 0) {
                n /= p;
                q *= p;
            }
            if (q > 1) parts[p].push_back(q);
        }
    }
    std::size_t r = 0;
    for (auto& [p, v] : parts) {
        std::sort(v.rbegin(), v.rend());
        r = std::max(r, v.size());
    }
    std::vector<int> f(r, 1);
    for (auto& [p, v] : parts)
        for (std::size_t t = 0; t < v.size(); ++t) f[r - 1 - t] *= v[t];
    return {f};
}

FinAbGroup FinAbGroup::from_factors(std::vector<int> factors)
{
    for (std::size_t t = 0; t < factors.size(); ++t) {
        if (factors[t] < 2) throw InvalidArgument("invariant factors must be at least 2");
        if (t > 0 && factors[t] % factors[t - 1] != 0) throw InvalidArgument("invariant factors must divide upward");
    }
    return {std::move(factors)};
}

int FinAbGroup::order() const { return std::accumulate(factors.begin(), factors.end(), 1, std::multiplies<>()); }

int FinAbGroup::encode(const std::vector<int>& x) const
{
    int e = 0;
    for (int t = rank() - 1; t >= 0; --t) e = e * factors[static_cast<std::size_t>(t)] + mod(x[static_cast<std::size_t>(t)], factors[static_cast<std::size_t>(t)]);
    return e;
}

std::vector<int> FinAbGroup::decode(int e) const
{
    std::vector<int> x(factors.size());
    for (std::size_t t = 0; t < factors.size(); ++t) {
        x[t] = e % factors[t];
        e /= factors[t];
    }
    return x;
}

int FinAbGroup::add(int a, int b) const
{
    auto x = decode(a), y = decode(b);
    for (std::size_t t = 0; t < x.size(); ++t) x[t] += y[t];
    return encode(x);
}

int FinAbGroup::negate(int a) const
{
    auto x = decode(a);
    for (int& v : x) v = -v;
    return encode(x);
}

std::string FinAbGroup::name() const
{
    if (factors.empty()) return "0";
    std::string s;
    for (int f : factors) s += (s.empty() ? "" : "+") + ("Z/" + std::to_string(f));
    return s;
}

std::vector<FinAbGroup> groups_up_to(int max_order)
{
    if (max_order < 1) throw InvalidArgument("max order must be positive");
    std::vector<FinAbGroup> out;
    std::vector<int> cur;
    extend_factor_lists(cur, 1, max_order, out);
    std::sort(out.begin(), out.end(), [](const FinAbGroup& a, const FinAbGroup& b) {
        return a.order() != b.order() ? a.order() < b.order() : a.factors < b.factors;
    });
    return out;
}

std::string AbHom::defect() const
{
    if (m.size() != static_cast<std::size_t>(src.rank() * dst.rank())) return "matrix has the wrong shape";
    for (int r = 0; r < dst.rank(); ++r)
        for (int c = 0; c < src.rank(); ++c) {
            const int t = dst.factors[static_cast<std::size_t>(r)];
            if (at(r, c) < 0 || at(r, c) >= t) return "entry out of range";
            if (static_cast<long long>(src.factors[static_cast<std::size_t>(c)]) * at(r, c) % t != 0)
                return "generator " + std::to_string(c) + " is not annihilated by its order";
        }
    return {};
}

int AbHom::apply(int e) const
{
    const auto x = src.decode(e);
    std::vector<int> y(static_cast<std::size_t>(dst.rank()), 0);
    for (int r = 0; r < dst.rank(); ++r) {
        long long s = 0;
        for (int c = 0; c < src.rank(); ++c) s += static_cast<long long>(at(r, c)) * x[static_cast<std::size_t>(c)];
        y[static_cast<std::size_t>(r)] = mod(s, dst.factors[static_cast<std::size_t>(r)]);
    }
    return dst.encode(y);
}

std::vector<int> AbHom::table() const
{
    std::vector<int> t(static_cast<std::size_t>(src.order()));
    for (int e = 0; e < src.order(); ++e) t[static_cast<std::size_t>(e)] = apply(e);
    return t;
}

std::vector<int> AbHom::kernel() const
{
    std::vector<int> k;
    for (int e = 0; e < src.order(); ++e)
        if (apply(e) == 0) k.push_back(e);
    return k;
}

std::vector<int> AbHom::image() const
{
    auto t = table();
    std::sort(t.begin(), t.end());
    t.erase(std::unique(t.begin(), t.end()), t.end());
    return t;
}

bool AbHom::injective() const { return kernel().size() == 1; }

bool AbHom::surjective() const { return static_cast<int>(image().size()) == dst.order(); }

std::string AbHom::str() const
{
    std::string s = "[";
    for (int r = 0; r < dst.rank(); ++r) {
        s += r ? ";" : "";
        for (int c = 0; c < src.rank(); ++c) s += (c ? "," : "") + std::to_string(at(r, c));
    }
    return s + "]";
}

AbHom hom_identity(const FinAbGroup& g)
{
    AbHom h{g, g, std::vector<int>(static_cast<std::size_t>(g.rank() * g.rank()), 0)};
    for (int t = 0; t < g.rank(); ++t) h.m[static_cast<std::size_t>(t * g.rank() + t)] = 1;
    return h;
}

AbHom hom_zero(const FinAbGroup& src, const FinAbGroup& dst)
{
    return {src, dst, std::vector<int>(static_cast<std::size_t>(src.rank() * dst.rank()), 0)};
}

AbHom hom_compose(const AbHom& g, const AbHom& f)
{
    if (!(g.src == f.dst)) throw InvalidArgument("composing homs with mismatched groups");
    AbHom h = hom_zero(f.src, g.dst);
    for (int r = 0; r < g.dst.rank(); ++r)
        for (int c = 0; c < f.src.rank(); ++c) {
            long long s = 0;
            for (int k = 0; k < f.dst.rank(); ++k) s += static_cast<long long>(g.at(r, k)) * f.at(k, c);
            h.m[static_cast<std::size_t>(r * f.src.rank() + c)] = mod(s, g.dst.factors[static_cast<std::size_t>(r)]);
        }
    return h;
}

std::vector<AbHom> all_homs(const FinAbGroup& src, const FinAbGroup& dst)
{
    const int cells = src.rank() * dst.rank();
    std::vector<std::vector<int>> choices(static_cast<std::size_t>(cells));
    for (int r = 0; r < dst.rank(); ++r)
        for (int c = 0; c < src.rank(); ++c) {
            const int t = dst.factors[static_cast<std::size_t>(r)];
            const int step = t / std::gcd(t, src.factors[static_cast<std::size_t>(c)]);
            for (int v = 0; v < t; v += step) choices[static_cast<std::size_t>(r * src.rank() + c)].push_back(v);
        }
    std::vector<AbHom> out;
    AbHom h = hom_zero(src, dst);
    std::vector<std::size_t> pos(static_cast<std::size_t>(cells), 0);
    while (true) {
        for (int t = 0; t < cells; ++t) h.m[static_cast<std::size_t>(t)] = choices[static_cast<std::size_t>(t)][pos[static_cast<std::size_t>(t)]];
        out.push_back(h);
        int t = cells - 1;
        while (t >= 0 && ++pos[static_cast<std::size_t>(t)] == choices[static_cast<std::size_t>(t)].size()) pos[static_cast<std::size_t>(t--)] = 0;
        if (t < 0) break;
    }
    return out;
}

std::vector<AbHom> automorphisms(const FinAbGroup& g)
{
    std::vector<AbHom> out;
    for (auto& h : all_homs(g, g))
        if (h.injective()) out.push_back(std::move(h));
    return out;
}

}  // namespace q2seg
