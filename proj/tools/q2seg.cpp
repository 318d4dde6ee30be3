#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "q2seg/catalog.hpp"
#include "q2seg/certificates.hpp"
#include "q2seg/error.hpp"
#include "q2seg/examples.hpp"
#include "q2seg/fillers.hpp"
#include "q2seg/horns.hpp"
#include "q2seg/pathspace.hpp"
#include "q2seg/shapes.hpp"
#include "q2seg/sset_json.hpp"

using namespace q2seg;

namespace {

constexpr int kExitUsage = 64;

struct Globals {
    std::uint64_t seed = 0;
    int cap = -1;
    std::string mode = "exhaustive";
    std::string out;
    std::string format = "json";
};

// Raised for malformed files and flag values; maps to the usage exit code.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

int cap_or(const Globals& g, int fallback) { return g.cap >= 0 ? g.cap : fallback; }

CheckMode parse_mode(const Globals& g)
{
    if (g.mode == "exhaustive") return CheckMode::exhaustive();
    const std::string prefix = "sample=";
    if (g.mode.rfind(prefix, 0) == 0) {
        const std::string num = g.mode.substr(prefix.size());
        std::size_t used = 0;
        unsigned long long n = 0;
        try {
            n = std::stoull(num, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used > 0 && used == num.size() && n > 0) return CheckMode::sample(g.seed, n);
    }
    throw InputError("--mode must be 'exhaustive' or 'sample=N' with N > 0, got '" + g.mode + "'");
}

nlohmann::json read_json_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError(path + ": cannot open");
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return nlohmann::json::parse(buf.str());
    } catch (const nlohmann::json::parse_error& e) {
        // e.byte is the 1-based offset of the offending character
        const std::string text = buf.str();
        std::size_t line = 1, col = 1;
        for (std::size_t k = 0; k + 1 < e.byte && k < text.size(); ++k) {
            if (text[k] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw InputError(path + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + e.what());
    }
}

template <class F>
auto with_input(const std::string& path, F&& decode)
{
    const auto j = read_json_file(path);
    try {
        return decode(j);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(path + ": " + e.what());
    } catch (const InvalidArgument& e) {
        throw InputError(path + ": " + e.what());
    }
}

std::vector<int> parse_list(const std::string& s, const std::string& flag)
{
    std::vector<int> out;
    if (s.empty()) return out;
    std::stringstream in(s);
    std::string part;
    while (std::getline(in, part, ',')) {
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(part, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != part.size()) throw InputError(flag + ": '" + part + "' is not an integer");
        out.push_back(v);
    }
    return out;
}

void render_text(std::ostream& os, const nlohmann::json& j, const std::string& prefix)
{
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) {
            if (v.is_object())
                render_text(os, v, prefix + k + ".");
            else
                os << prefix << k << ": " << v.dump() << "\n";
        }
    } else {
        os << prefix << j.dump() << "\n";
    }
}

void emit(const Globals& g, const nlohmann::json& report)
{
    std::ostringstream body;
    if (g.format == "text")
        render_text(body, report, "");
    else
        body << report.dump() << "\n";
    if (g.out.empty()) {
        std::cout << body.str();
        return;
    }
    std::ofstream f(g.out, std::ios::binary);
    if (!f) throw InputError(g.out + ": cannot write");
    f << body.str();
}

SSetPtr load_target(const std::string& example, const std::string& input, int cap)
{
    if (example.empty() == input.empty()) throw InputError("give exactly one of --example and --input");
    if (!example.empty()) return named_example(example, cap).sset;
    return with_input(input, [](const nlohmann::json& j) { return sset_from_json(j); });
}

Side parse_side(const std::string& s)
{
    if (s == "left") return Side::Left;
    if (s == "right") return Side::Right;
    throw InputError("--side must be left or right");
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Quasi-2-Segal sets: horns, filler checks, anodyne certificates and examples"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--seed", g.seed, "Seed for sampled checks");
    app.add_option("--cap", g.cap, "Dimension cap for checks and truncations");
    app.add_option("--mode", g.mode, "exhaustive or sample=N (N problems per horn shape)");
    app.add_option("--out", g.out, "Write the report to this file instead of stdout");
    app.add_option("--format", g.format, "Report format")->check(CLI::IsMember({"json", "text"}));

    int exit_code = 0;
    std::function<void()> run;

    // broken
    auto* broken = app.add_subcommand("broken", "Decide whether a subset of {0..n} is broken");
    int b_n = 0;
    std::string b_set;
    broken->add_option("--n", b_n, "n")->required();
    broken->add_option("--set", b_set, "Comma-separated elements")->required();
    broken->callback([&] {
        run = [&] { emit(g, {{"broken", is_broken(parse_list(b_set, "--set"), b_n)}}); };
    });

    // triangulations
    auto* tri = app.add_subcommand("triangulations", "Enumerate triangulations of the (n+1)-gon");
    int t_n = 0;
    bool t_count = false;
    tri->add_option("--n", t_n, "n")->required();
    tri->add_flag("--count-only", t_count, "Print only the count");
    tri->callback([&] {
        run = [&] {
            const auto all = enumerate_triangulations(t_n);
            nlohmann::json j{{"count", all.size()}};
            if (!t_count) {
                auto& list = j["triangulations"] = nlohmann::json::array();
                for (const auto& t : all)
                    list.push_back({{"name", triangulation_name(t)},
                                    {"triangles", t.triangles},
                                    {"extremes", extreme_vertices(t)}});
            }
            emit(g, j);
        };
    });

    // horns
    auto* horns = app.add_subcommand("horns", "List the 2-Segal horns of Delta[n], or every generalized horn");
    int h_n = 0;
    bool h_all = false;
    horns->add_option("--n", h_n, "n")->required();
    horns->add_flag("--all", h_all, "Every proper nonempty set of missing faces");
    horns->callback([&] {
        run = [&] {
            if (h_n < 1 || h_n > (h_all ? 12 : 30)) throw InputError(h_all ? "--n must be in 1..12 with --all" : "--n must be in 1..30");
            std::vector<GeneralizedHorn> list;
            if (h_all) {
                const std::uint32_t full = (1u << (h_n + 1)) - 1;
                for (std::uint32_t present = 1; present < full; ++present) list.push_back({h_n, present});
            } else {
                list = enumerate_two_segal_horns(h_n);
            }
            nlohmann::json arr = nlohmann::json::array();
            for (const auto& h : list)
                arr.push_back({{"name", h.name()},
                               {"missing", h.missing()},
                               {"present", h.present_faces()},
                               {"two_segal", h.is_two_segal()}});
            emit(g, {{"n", h_n}, {"count", list.size()}, {"horns", arr}});
        };
    });

    // check
    auto* check = app.add_subcommand("check", "Check a filler property on a named example or an ssetjson file");
    std::string c_prop, c_example, c_input;
    bool c_lower_only = false, c_upper_only = false;
    int c_jdepth = 3;
    check->add_option("--property", c_prop, "quasicat | quasi2segal | unique_spine | lower_upper_2segal | j_augmented")->required();
    check->add_option("--example", c_example, "Example name: point, delta:N, poset:N, cyclic:N, s3, iso, discrete:K, "
                                              "random:SEED, forest:NODES, waldhausen:ORDER, genhorn:N:A,B, "
                                              "isohorn:N:I:DEPTH");
    check->add_option("--input", c_input, "ssetjson/1 file");
    check->add_flag("--lower-only", c_lower_only, "lower_upper_2segal: skip the upper side");
    check->add_flag("--upper-only", c_upper_only, "lower_upper_2segal: skip the lower side");
    check->add_option("--j-depth", c_jdepth, "j_augmented: depth of the glued truncated J");
    check->callback([&] {
        run = [&] {
            const int cap = cap_or(g, 3);
            CheckOptions opts;
            opts.mode = parse_mode(g);
            opts.lower = !c_upper_only;
            opts.upper = !c_lower_only;
            opts.j_depth = c_jdepth;
            Property p;
            try {
                p = property_from_name(c_prop);
            } catch (const InvalidArgument& e) {
                throw InputError(e.what());
            }
            const auto x = load_target(c_example, c_input, cap);
            const auto r = check_filler_property(x, p, cap, opts);
            emit(g, r.to_json());
            exit_code = r.exit_code();
        };
    });

    // certify
    auto* certify = app.add_subcommand("certify", "Emit a cert/1 anodyne certificate");
    int k_genhorn = -1, k_spine = -1, k_isohorn = -1, k_i = 0, k_depth = 0, k_stages = -1;
    std::string k_missing, k_triangles, k_spec;
    certify->add_option("--genhorn", k_genhorn, "Generalized horn in Delta[N]");
    certify->add_option("--missing", k_missing, "Missing faces of the generalized horn");
    certify->add_option("--spine", k_spine, "2-Segal spine in Delta[N]");
    certify->add_option("--triangles", k_triangles, "Spine triangles as a,b,c;a,b,c;...");
    certify->add_option("--isohorn", k_isohorn, "Iso-horn V_i[N]");
    certify->add_option("--i", k_i, "Iso-horn index");
    certify->add_option("--depth", k_depth, "Iso-horn depth");
    certify->add_option("--stages", k_stages, "Iso-horn stages (default: as many as the depth holds)");
    certify->add_option("--spec", k_spec, "Shape spec as JSON");
    certify->callback([&] {
        run = [&] {
            const int chosen = (k_genhorn >= 0) + (k_spine >= 0) + (k_isohorn >= 0) + !k_spec.empty();
            if (chosen != 1) throw InputError("give exactly one of --genhorn, --spine, --isohorn, --spec");
            ShapeSpec spec;
            if (k_genhorn >= 0) {
                spec = ShapeSpec::genhorn(k_genhorn, parse_list(k_missing, "--missing"));
            } else if (k_spine >= 0) {
                std::vector<Triangle> ts;
                std::stringstream in(k_triangles);
                std::string part;
                while (std::getline(in, part, ';')) {
                    const auto v = parse_list(part, "--triangles");
                    if (v.size() != 3) throw InputError("--triangles: each triangle needs three vertices");
                    ts.push_back({v[0], v[1], v[2]});
                }
                spec = ShapeSpec::spine(make_triangulation(k_spine, ts));
            } else if (k_isohorn >= 0) {
                spec = ShapeSpec::isohorn(k_isohorn, k_i, k_depth, k_stages);
            } else {
                try {
                    spec = ShapeSpec::from_json(nlohmann::json::parse(k_spec));
                } catch (const nlohmann::json::exception& e) {
                    throw InputError(std::string("--spec: ") + e.what());
                }
            }
            emit(g, certify_anodyne(spec).to_json());
        };
    });

    // verify-cert
    auto* verify = app.add_subcommand("verify-cert", "Replay a cert/1 certificate");
    std::string v_file;
    verify->add_option("file", v_file, "Certificate file")->required();
    verify->callback([&] {
        run = [&] {
            const auto c = with_input(v_file, [](const nlohmann::json& j) { return Certificate::from_json(j); });
            const auto r = verify_certificate(c);
            emit(g, r.to_json());
            exit_code = r.accepted ? 0 : 1;
        };
    });

    // pathspace
    auto* path = app.add_subcommand("pathspace", "Left or right path space of an example");
    std::string p_example, p_input, p_side = "left", p_prop;
    path->add_option("--example", p_example, "Example name (as for check)");
    path->add_option("--input", p_input, "ssetjson/1 file");
    path->add_option("--side", p_side, "left or right");
    path->add_option("--property", p_prop, "Also check this property on the path space");
    path->callback([&] {
        run = [&] {
            const int cap = cap_or(g, 3);
            const auto x = load_target(p_example, p_input, cap + 1);
            const auto ps = path_space(x, parse_side(p_side));
            nlohmann::json j{{"side", p_side}, {"counts", ps.sset->counts()}, {"sset", sset_to_json(*ps.sset)}};
            if (!p_prop.empty()) {
                CheckOptions opts;
                opts.mode = parse_mode(g);
                const auto r = check_filler_property(ps.sset, property_from_name(p_prop), cap, opts);
                j["check"] = r.to_json();
                exit_code = r.exit_code();
            }
            emit(g, j);
        };
    });

    // esd
    auto* esd = app.add_subcommand("esd", "Edgewise subdivision of an example");
    std::string e_example, e_input, e_prop;
    esd->add_option("--example", e_example, "Example name (as for check)");
    esd->add_option("--input", e_input, "ssetjson/1 file");
    esd->add_option("--property", e_prop, "Also check this property on the subdivision");
    esd->callback([&] {
        run = [&] {
            const int cap = cap_or(g, 2);
            const auto x = load_target(e_example, e_input, 2 * cap + 1);
            const auto es = edgewise_subdivision(x);
            nlohmann::json j{{"counts", es.sset->counts()}, {"sset", sset_to_json(*es.sset)}};
            if (!e_prop.empty()) {
                CheckOptions opts;
                opts.mode = parse_mode(g);
                const auto r = check_filler_property(es.sset, property_from_name(e_prop), cap, opts);
                j["check"] = r.to_json();
                exit_code = r.exit_code();
            }
            emit(g, j);
        };
    });

    // counterexample
    auto* cex = app.add_subcommand("counterexample", "Rebuild the Waldhausen grids with isomorphic but unequal faces");
    bool x_oracle = false;
    cex->add_flag("--oracle", x_oracle, "Also locate both grids in the order-8 oracle (slow, about 2 GB)");
    cex->callback([&] {
        run = [&] {
            std::optional<WaldhausenOracle> o;
            if (x_oracle) o.emplace(waldhausen_sset_ab(8, 3, 20'000'000, false, false));
            const auto r = appendix_counterexample(o ? &*o : nullptr);
            emit(g, r.to_json());
            exit_code = r.reproduces() ? 0 : 1;
        };
    });

    // shapes
    auto* shapes = app.add_subcommand("shapes", "Build a shape inclusion from a JSON spec");
    std::string s_spec;
    shapes->add_option("--spec", s_spec, "Shape spec, e.g. {\"shape\":\"genhorn\",\"n\":3,\"missing\":[0,2]}")
        ->required();
    shapes->callback([&] {
        run = [&] {
            ShapeSpec spec;
            try {
                spec = ShapeSpec::from_json(nlohmann::json::parse(s_spec));
            } catch (const nlohmann::json::exception& e) {
                throw InputError(std::string("--spec: ") + e.what());
            }
            const auto sh = build_shape(spec);
            emit(g, {{"spec", spec.to_json()},
                     {"sub", sset_to_json(*sh.sub.sset)},
                     {"ambient", sset_to_json(*sh.ambient.sset)},
                     {"inclusion", map_to_json(sh.inclusion)}});
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        run();
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const InvalidArgument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const BudgetExceeded& e) {
        emit(g, {{"inconclusive", true}, {"reason", e.what()}});
        return 2;
    } catch (const CapExceeded& e) {
        emit(g, {{"inconclusive", true}, {"reason", e.what()}});
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return exit_code;
}
