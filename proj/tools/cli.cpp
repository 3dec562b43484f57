/*
   Copyright 2026 The gyrokit Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "gyro/error.hpp"
#include "gyro/finite.hpp"
#include "gyro/mobius.hpp"
#include "gyro/prenorm.hpp"
#include "gyro/product.hpp"
#include "gyro/search.hpp"
#include "gyro/sets.hpp"
#include "gyro/subgyro.hpp"
#include "gyro/table_io.hpp"
#include "gyro/verify.hpp"

namespace gyro::cli {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

/// Raised for bad flag values; maps to the usage exit code.
class UsageError : public Error {
public:
    using Error::Error;
};

struct Options {
    std::uint64_t seed = 0;
    std::size_t samples = 10000;
    std::optional<double> tol;
    std::optional<std::size_t> depth;
    std::optional<std::size_t> budget;
    std::string out;
    bool strict = false;
    bool serial = false;

    bool mobius = false;
    bool klein4 = false;
    std::optional<std::size_t> cyclic;
    std::string table;
    std::string carrier;

    std::string sub;
    std::string generate;
    std::size_t cap = 10;
    std::string sets;
    std::string radii = "geometric";
    double first = 1.0 / 3.0;
    double ratio = 1.0 / 3.0;
    std::string check = "prenorm";
    std::string F;
    std::size_t grid = 200;
    std::size_t sup_samples = 1000;
    std::string x;
    std::optional<double> radius;
    std::string U;
    std::string A, B, C;
    std::string a, b, z;
    std::size_t order = 0;
    std::string format = "text";
};

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(cur);
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& s, const std::string& what) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw UsageError("bad " + what + ": '" + s + "'");
    }
    if (used != s.size()) throw UsageError("bad " + what + ": '" + s + "'");
    return v;
}

Index parse_index(const std::string& raw) {
    const std::string s = trim(raw);
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
        throw UsageError("bad index: '" + raw + "'");
    const unsigned long v = std::stoul(s);
    return static_cast<Index>(v);
}

/// Accepts "x", "yi", "x+yi", "x-yi" and "i".
Complex parse_complex(const std::string& raw) {
    std::string s = trim(raw);
    if (s.empty()) throw UsageError("empty complex number");
    if (s.back() != 'i') return {parse_double(s, "complex number"), 0.0};
    s.pop_back();
    std::size_t split_at = std::string::npos;
    for (std::size_t k = s.size(); k-- > 1;) {
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
            split_at = k;
            break;
        }
    }
    auto imag_of = [](const std::string& t) {
        if (t.empty() || t == "+") return 1.0;
        if (t == "-") return -1.0;
        return parse_double(t, "imaginary part");
    };
    if (split_at == std::string::npos) return {0.0, imag_of(s)};
    return {parse_double(s.substr(0, split_at), "real part"), imag_of(s.substr(split_at))};
}

Element parse_element(const Carrier& c, const std::string& raw) {
    if (c.kind() == CarrierKind::product) {
        const auto& p = static_cast<const ProductCarrier&>(c);
        const auto parts = split(raw, ':');
        if (parts.size() != c.arity()) throw UsageError("product element needs " +
                                                        std::to_string(c.arity()) + " ':'-separated atoms");
        std::vector<std::string> lp(parts.begin(), parts.begin() + static_cast<long>(p.left().arity()));
        std::vector<std::string> rp(parts.begin() + static_cast<long>(p.left().arity()), parts.end());
        auto join = [](const std::vector<std::string>& v) {
            std::string s;
            for (std::size_t k = 0; k < v.size(); ++k) s += (k ? ":" : "") + v[k];
            return s;
        };
        Element e = Element::concat(parse_element(p.left(), join(lp)), parse_element(p.right(), join(rp)));
        c.check_domain(e);
        return e;
    }
    Element e = c.kind() == CarrierKind::finite_table ? Element(parse_index(raw)) : Element(parse_complex(raw));
    c.check_domain(e);
    return e;
}

/// Finite carriers separate elements with ',' or ';'; the others with ';' only.
std::vector<Element> parse_elements(const Carrier& c, const std::string& s) {
    std::string text = s;
    if (c.kind() == CarrierKind::finite_table) std::replace(text.begin(), text.end(), ',', ';');
    std::vector<Element> out;
    for (const auto& part : split(text, ';')) {
        if (trim(part).empty()) continue;
        out.push_back(parse_element(c, part));
    }
    return out;
}

std::vector<Index> parse_indices(const std::string& s, std::size_t n) {
    std::vector<Index> out;
    if (trim(s) == "G") {
        for (std::size_t i = 0; i < n; ++i) out.push_back(static_cast<Index>(i));
        return out;
    }
    for (const auto& part : split(s, ',')) {
        if (trim(part).empty()) continue;
        out.push_back(parse_index(part));
    }
    for (Index i : out)
        if (i >= n) throw UsageError("index " + std::to_string(i) + " out of range for order " + std::to_string(n));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

json atom_json(const Atom& a) {
    if (const auto* i = std::get_if<Index>(&a)) return *i;
    const Complex z = std::get<Complex>(a);
    return json::array({z.real(), z.imag()});
}

json element_json(const Element& e) {
    if (e.arity() == 1) return atom_json(e[0]);
    json arr = json::array();
    for (const auto& a : e.parts()) arr.push_back(atom_json(a));
    return arr;
}

json tuple_json(const Tuple& t) {
    json arr = json::array();
    for (const auto& e : t) arr.push_back(element_json(e));
    return arr;
}

json number_json(double v) {
    if (!std::isfinite(v)) return nullptr;
    return v;
}

json property_json(const PropertyResult& p) {
    json j;
    j["name"] = p.name;
    j["status"] = to_string(p.status);
    j["checks"] = p.checks;
    j["budget"] = p.budget;
    j["max_residual"] = number_json(p.max_residual);
    j["exhaustive"] = p.exhaustive;
    if (p.counterexample) {
        j["counterexample"] = {{"tuple", tuple_json(p.counterexample->tuple)},
                               {"residual", number_json(p.counterexample->residual)},
                               {"detail", p.counterexample->detail}};
    } else {
        j["counterexample"] = nullptr;
    }
    if (!p.note.empty()) j["note"] = p.note;
    return j;
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

struct CarrierChoice {
    CarrierPtr carrier;
    FiniteCarrierPtr finite;
    std::shared_ptr<const MobiusDisk> disk;
};

struct Context {
    std::string command;
    Options opt;
    std::vector<std::string> args;
    fs::path out_dir;
    CarrierChoice carrier;
    VerificationReport report;
    json results = json::object();
    bool failed = false;
    bool exhausted = false;
    std::vector<std::string> lines;

    Execution exec() const { return opt.serial ? Execution::serial : Execution::parallel; }

    const Carrier& c() const { return *carrier.carrier; }

    const FiniteCarrier& finite() const {
        if (!carrier.finite) throw UsageError(command + " needs a finite carrier");
        return *carrier.finite;
    }

    const FiniteCarrierPtr& finite_ptr() const {
        finite();
        return carrier.finite;
    }

    std::shared_ptr<const MobiusDisk> disk() const {
        if (!carrier.disk) throw UsageError(command + " needs the Mobius disk carrier");
        return carrier.disk;
    }

    fs::path artifact(const std::string& name) const { return out_dir / name; }
};

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw PreconditionError("cannot write " + path.string());
    f << text;
    if (!f) throw PreconditionError("failed writing " + path.string());
}

struct Factor {
    CarrierPtr carrier;
    std::optional<CayleyTable> table;
    bool group = false;
    std::shared_ptr<const MobiusDisk> disk;
};

/// Loads a table file without deciding whether it is a gyrogroup.
CayleyTable read_table(const std::string& path) {
    TableFile tf = load_table(path);
    if (tf.table.name().empty()) tf.table.set_name(fs::path(path).stem().string());
    return tf.table;
}

Factor parse_factor(const std::string& raw, const Options& opt) {
    const std::string s = trim(raw);
    Factor f;
    if (s == "mobius") {
        f.disk = mobius_make(opt.tol.value_or(MobiusDisk::default_tolerance));
        f.carrier = f.disk;
    } else if (s == "klein4") {
        f.table = CayleyTable::klein_four();
        f.group = true;
    } else if (s.rfind("cyclic:", 0) == 0) {
        const Index n = parse_index(s.substr(7));
        if (n == 0) throw UsageError("cyclic order must be positive");
        f.table = CayleyTable::cyclic(n);
        f.group = true;
    } else if (s.rfind("table:", 0) == 0) {
        f.table = read_table(s.substr(6));
    } else {
        throw UsageError("unknown carrier '" + s + "' (expected mobius, klein4, cyclic:N or table:PATH)");
    }
    return f;
}

/// Builds the carrier. `validate` rejects tables that are not gyrogroups.
CarrierChoice make_carrier(const Options& opt, bool validate) {
    std::vector<std::string> specs;
    if (opt.mobius) specs.emplace_back("mobius");
    if (opt.klein4) specs.emplace_back("klein4");
    if (opt.cyclic) specs.push_back("cyclic:" + std::to_string(*opt.cyclic));
    if (!opt.table.empty()) specs.push_back("table:" + opt.table);
    if (!opt.carrier.empty()) specs.push_back(opt.carrier);
    if (specs.empty()) throw UsageError("choose a carrier: --mobius, --table, --cyclic, --klein4 or --carrier");
    if (specs.size() > 1) throw UsageError("more than one carrier given");

    std::vector<Factor> factors;
    for (const auto& part : split(specs.front(), '*')) factors.push_back(parse_factor(part, opt));

    CarrierChoice out;
    const bool all_finite = std::all_of(factors.begin(), factors.end(),
                                        [](const Factor& f) { return f.table.has_value(); });
    if (all_finite) {
        CayleyTable t = *factors.front().table;
        bool group = factors.front().group;
        for (std::size_t k = 1; k < factors.size(); ++k) {
            t = direct_product(t, *factors[k].table);
            group = group && factors[k].group;
        }
        if (group) {
            out.finite = group_adapter(std::move(t));
        } else if (validate) {
            out.finite = finite_from_table(std::move(t));
        } else {
            if (const long row = t.first_non_permutation_row(); row >= 0)
                throw MalformedTable("row " + std::to_string(row) + " is not a permutation");
            out.finite = std::make_shared<const FiniteCarrier>(
                std::make_shared<const CayleyTable>(std::move(t)), false);
        }
        out.carrier = out.finite;
        return out;
    }
    for (auto& f : factors) {
        if (f.carrier) continue;
        f.carrier = f.group ? group_adapter(*f.table)
                            : (validate ? finite_from_table(*f.table)
                                        : std::make_shared<const FiniteCarrier>(
                                              std::make_shared<const CayleyTable>(*f.table), false));
    }
    if (factors.size() == 1) {
        out.disk = factors.front().disk;
        out.carrier = factors.front().carrier;
        return out;
    }
    CarrierPtr c = factors.front().carrier;
    for (std::size_t k = 1; k < factors.size(); ++k) c = product(c, factors[k].carrier);
    out.carrier = c;
    return out;
}

void add_properties(Context& ctx, const VerificationReport& r) {
    for (const auto& p : r.properties()) ctx.report.add(p);
}

std::size_t chain_depth(std::size_t depth) {
    return std::max(default_chain_depth, depth + 1);
}

NeighborhoodChain make_chain(Context& ctx, std::size_t depth) {
    if (ctx.carrier.finite) {
        if (ctx.opt.sets.empty()) throw UsageError("--sets is required on finite carriers");
        std::vector<std::vector<Index>> sets;
        for (const auto& part : split(ctx.opt.sets, ';')) sets.push_back(parse_indices(part, ctx.finite().table().order()));
        return exact_chain(ctx.carrier.finite, sets);
    }
    auto disk = ctx.disk();
    const std::size_t levels = chain_depth(depth);
    if (ctx.opt.radii == "geometric")
        return geometric_ball_chain(disk, ctx.opt.first, ctx.opt.ratio, levels, 1000, ctx.opt.seed);
    if (ctx.opt.radii == "harmonic") return harmonic_ball_chain(disk, levels, 1000, ctx.opt.seed);
    throw UsageError("--radii must be geometric or harmonic");
}

json chain_json(const NeighborhoodChain& chain, std::size_t shown) {
    json arr = json::array();
    for (std::size_t n = 0; n < std::min(shown, chain.size()); ++n) {
        const auto& s = chain.at(n);
        if (s.is_exact()) {
            arr.push_back(s.indices());
        } else if (s.ball_radius()) {
            arr.push_back({{"ball_radius", *s.ball_radius()}});
        } else {
            arr.push_back({{"sampled", s.size()}});
        }
    }
    return arr;
}

// ---------------------------------------------------------------- commands

void cmd_verify(Context& ctx) {
    VerifyOptions vo;
    vo.budget = ctx.opt.samples;
    vo.seed = ctx.opt.seed;
    vo.exec = ctx.exec();
    add_properties(ctx, verify_axioms(ctx.c(), vo));
    const auto deg = is_degenerate_group(ctx.c(), vo);
    ctx.results["degenerate"] = deg.degenerate;
    ctx.results["degeneracy_exhaustive"] = deg.exhaustive;
    if (deg.witness) ctx.results["nondegenerate_witness"] = tuple_json(*deg.witness);
    ctx.lines.push_back(std::string("gyrations ") + (deg.degenerate ? "all trivial" : "not all trivial") +
                        (deg.exhaustive ? "" : " (sampled)"));
}

void cmd_gyr_table(Context& ctx) {
    VerifyOptions vo;
    vo.budget = ctx.opt.samples;
    vo.seed = ctx.opt.seed;
    vo.exec = ctx.exec();
    add_properties(ctx, gyr_consistency_check(ctx.c(), vo));
    if (ctx.carrier.finite) {
        const auto& t = ctx.finite().table();
        json pairs = json::array();
        std::size_t nontrivial = 0;
        for (Index a = 0; a < t.order(); ++a) {
            for (Index b = 0; b < t.order(); ++b) {
                auto perm = t.gyr_permutation(a, b);
                bool id = true;
                for (Index k = 0; k < perm.size(); ++k) id = id && perm[k] == k;
                if (!id) ++nontrivial;
                pairs.push_back({{"a", a}, {"b", b}, {"permutation", perm}});
            }
        }
        ctx.results["nontrivial_gyrations"] = nontrivial;
        write_file(ctx.artifact("gyr-table.json"), json{{"order", t.order()}, {"gyrations", pairs}}.dump(2) + "\n");
        ctx.results["artifact"] = "gyr-table.json";
        ctx.lines.push_back(std::to_string(nontrivial) + " of " + std::to_string(t.order() * t.order()) +
                            " gyrations are nontrivial");
        return;
    }
    if (ctx.opt.a.empty() || ctx.opt.b.empty() || ctx.opt.z.empty())
        throw UsageError("gyr-table on an infinite carrier needs --a, --b and --z");
    const Element a = parse_element(ctx.c(), ctx.opt.a);
    const Element b = parse_element(ctx.c(), ctx.opt.b);
    const Element z = parse_element(ctx.c(), ctx.opt.z);
    const Element derived = ctx.c().gyr_derived(a, b, z);
    const Element value = ctx.c().gyr(a, b, z);
    ctx.results["a"] = element_json(a);
    ctx.results["b"] = element_json(b);
    ctx.results["z"] = element_json(z);
    ctx.results["gyr"] = element_json(value);
    ctx.results["gyr_derived"] = element_json(derived);
    ctx.results["difference"] = ctx.c().distance(value, derived);
    if (ctx.carrier.disk) {
        const Complex f = mobius_gyr_factor(a.point(), b.point());
        ctx.results["factor"] = json::array({f.real(), f.imag()});
        ctx.results["modulus_change"] = std::abs(std::abs(value.point()) - std::abs(z.point()));
    }
    ctx.lines.push_back("gyr[a,b](z) = " + to_string(value) + ", derived " + to_string(derived));
}

void cmd_subgyro(Context& ctx) {
    const auto& c = ctx.c();
    if (!ctx.opt.generate.empty()) {
        const auto seeds = parse_elements(c, ctx.opt.generate);
        if (seeds.empty()) throw UsageError("--generate needs at least one element");
        const auto g = generated(ctx.carrier.carrier, seeds, ctx.opt.cap,
                                 ctx.opt.budget.value_or(default_closure_limit));
        ctx.results["rounds"] = g.rounds;
        ctx.results["round_extent"] = g.round_extent;
        ctx.results["partial"] = g.handle.partial;
        ctx.results["size"] = g.handle.members.size();
        if (c.order()) {
            json m = json::array();
            for (const auto& e : g.handle.members) m.push_back(element_json(e));
            ctx.results["members"] = m;
        }
        ctx.exhausted = g.handle.partial;
        ctx.lines.push_back("closure has " + std::to_string(g.handle.members.size()) + " elements after " +
                            std::to_string(g.rounds) + " rounds" + (g.handle.partial ? " (partial)" : ""));
        return;
    }
    if (ctx.opt.sub.empty()) throw UsageError("subgyro needs --sub or --generate");
    auto members = parse_elements(c, ctx.opt.sub);
    if (members.empty()) throw UsageError("--sub is empty");
    const auto check = is_subgyrogroup(c, members);
    ctx.report.add(single_check("subgyrogroup", check.holds, check.witness.value_or(Tuple{}),
                                check.holds ? "" : "closure or inverse fails"));
    if (!check.holds) return;
    auto handle = make_subgyro(ctx.carrier.carrier, members);
    const auto lv = is_L_subgyrogroup(c, handle, ctx.opt.samples, ctx.opt.seed);
    PropertyResult p = single_check("L_subgyrogroup", lv.verdict != Verdict::no,
                                    lv.witness.value_or(Tuple{}),
                                    lv.witness ? "gyr[a,h](x) leaves H" : "");
    p.checks = lv.checks;
    p.budget = std::max(p.budget, lv.checks);
    p.exhaustive = lv.verdict != Verdict::sampled;
    if (lv.verdict == Verdict::sampled) p.note = to_string(lv.verdict);
    ctx.report.add(p);
    ctx.results["L_subgyrogroup"] = to_string(lv.verdict);
}

/// Checks --sub and computes its cosets; nullopt when it is not a subgyrogroup.
std::optional<CosetDecomposition> run_cosets(Context& ctx, SubgyroHandle& H) {
    const auto& fc = ctx.finite();
    const auto sub = parse_indices(ctx.opt.sub, fc.table().order());
    if (sub.empty()) throw UsageError("--sub is required");
    std::vector<Element> members(sub.begin(), sub.end());
    const auto check = is_subgyrogroup(fc, members);
    ctx.report.add(single_check("subgyrogroup", check.holds, check.witness.value_or(Tuple{}),
                                check.holds ? "" : "closure or inverse fails"));
    if (!check.holds) return std::nullopt;
    H = make_subgyro(ctx.finite_ptr(), sub);
    return left_cosets(fc, H);
}

json blocks_json(const CosetDecomposition& d) {
    return json{{"subgroup", d.subgroup}, {"representatives", d.representatives}, {"blocks", d.blocks}};
}

void cmd_cosets(Context& ctx) {
    SubgyroHandle H;
    const auto cd = run_cosets(ctx, H);
    if (!cd) return;
    const auto& d = *cd;
    ctx.report.add(single_check("partition", true));
    ctx.results["cosets"] = blocks_json(d);
    std::string s;
    for (const auto& b : d.blocks) {
        s += " {";
        for (std::size_t k = 0; k < b.size(); ++k) s += (k ? "," : "") + std::to_string(b[k]);
        s += "}";
    }
    ctx.lines.push_back(std::to_string(d.blocks.size()) + " cosets:" + s);
}

void cmd_quotient(Context& ctx) {
    SubgyroHandle H;
    if (!run_cosets(ctx, H)) return;
    const auto q = quotient(ctx.finite(), H, ctx.exec());
    add_properties(ctx, q.report);
    ctx.results["cosets"] = blocks_json(q.cosets);
    ctx.results["table"] = q.table.rows();
    std::map<std::string, std::string> meta{{"name", "quotient"}};
    const bool as_json = ctx.opt.format == "json";
    if (!as_json && ctx.opt.format != "text") throw UsageError("--format must be text or json");
    const std::string file = as_json ? "quotient.json" : "quotient.tbl";
    write_file(ctx.artifact(file), as_json ? write_table_json(q.table, meta) : write_table_text(q.table, meta));
    ctx.results["artifact"] = file;
    ctx.lines.push_back("quotient of order " + std::to_string(q.table.order()) + " written to " + file);
}

std::string subset_string(std::uint64_t mask, std::size_t n) {
    std::string s = "{";
    bool first = true;
    for (std::size_t i = 0; i < n; ++i)
        if (mask >> i & 1u) {
            s += (first ? "" : ",") + std::to_string(i);
            first = false;
        }
    return s + "}";
}

void cmd_setcheck(Context& ctx) {
    const auto& fc = ctx.finite();
    const std::size_t n = fc.table().order();
    auto make = [&](std::uint64_t mask) {
        std::vector<Index> v;
        for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1u) v.push_back(static_cast<Index>(i));
        return SetHandle::exact(ctx.finite_ptr(), v);
    };
    if (!ctx.opt.A.empty() || !ctx.opt.B.empty() || !ctx.opt.C.empty()) {
        auto set_of = [&](const std::string& s) { return SetHandle::exact(ctx.finite_ptr(), parse_indices(s, n)); };
        const auto v = disjointness_check(set_of(ctx.opt.A), set_of(ctx.opt.B), set_of(ctx.opt.C));
        ctx.report.add(single_check("disjointness_equivalence", v.holds(), {},
                                    v.holds() ? "" : "the two disjointness conditions disagree"));
        ctx.results["left_disjoint"] = v.left_disjoint;
        ctx.results["right_disjoint"] = v.right_disjoint;
        return;
    }
    if (n > 20) throw UsageError("setcheck enumerates subsets; order must be at most 20");
    const std::uint64_t subsets = std::uint64_t{1} << n;
    const bool exhaustive = 3 * n <= 18;
    const std::size_t total = exhaustive ? static_cast<std::size_t>(subsets * subsets * subsets) : ctx.opt.samples;
    std::vector<std::array<std::uint64_t, 3>> triples(total);
    if (exhaustive) {
        for (std::size_t i = 0; i < total; ++i)
            triples[i] = {i / (subsets * subsets), i / subsets % subsets, i % subsets};
    } else {
        Rng rng(ctx.opt.seed);
        std::uniform_int_distribution<std::uint64_t> pick(0, subsets - 1);
        for (auto& t : triples) t = {pick(rng), pick(rng), pick(rng)};
    }
    std::vector<char> ok(total, 1);
    for_each_index(total, ctx.exec(), [&](std::size_t i) {
        ok[i] = disjointness_check(make(triples[i][0]), make(triples[i][1]), make(triples[i][2])).holds();
    });
    PropertyResult p;
    p.name = "disjointness_equivalence";
    p.checks = p.budget = total;
    p.exhaustive = exhaustive;
    p.status = Status::pass;
    for (std::size_t i = 0; i < total; ++i) {
        if (ok[i]) continue;
        p.status = Status::fail;
        p.counterexample = Counterexample{{}, 1.0,
                                          "A=" + subset_string(triples[i][0], n) + " B=" +
                                              subset_string(triples[i][1], n) + " C=" +
                                              subset_string(triples[i][2], n)};
        break;
    }
    ctx.report.add(p);
}

ChainCheckOptions chain_options(Context& ctx) {
    ChainCheckOptions co;
    co.budget = std::min<std::size_t>(ctx.opt.samples, 100000);
    co.seed = ctx.opt.seed;
    co.exec = ctx.exec();
    if (ctx.opt.check == "prenorm") {
        co.mode = ChainMode::prenorm;
    } else if (ctx.opt.check == "base") {
        co.mode = ChainMode::base_at_H;
    } else if (ctx.opt.check == "invariant") {
        co.mode = ChainMode::invariant_set;
        if (ctx.opt.F.empty()) throw UsageError("--check invariant needs --F");
        if (ctx.carrier.finite) {
            co.invariant = SetHandle::exact(ctx.finite_ptr(), parse_indices(ctx.opt.F, ctx.finite().table().order()));
        } else {
            const double r = parse_double(ctx.opt.F, "--F radius");
            co.invariant = SetHandle::ball(ctx.disk(), r, 1000, ctx.opt.seed);
        }
    } else {
        throw UsageError("--check must be prenorm, base or invariant");
    }
    return co;
}

void cmd_chain(Context& ctx) {
    const auto chain = make_chain(ctx, ctx.opt.depth.value_or(default_chain_depth));
    const auto co = chain_options(ctx);
    const auto r = validate_chain(chain, co);
    add_properties(ctx, r);
    ctx.results["levels"] = chain.size();
    ctx.results["stabilizes"] = chain.stabilizes();
    ctx.results["chain"] = chain_json(chain, 8);
    for (const auto& p : r.properties())
        if (p.status == Status::fail && p.counterexample)
            ctx.lines.push_back("witness: " + p.name + " " + p.counterexample->detail);
}

PrenormTable build_table(Context& ctx, NeighborhoodChain& chain_out) {
    const std::size_t depth = ctx.opt.depth.value_or(default_dyadic_depth);
    if (depth == 0 || depth > 30) throw UsageError("--depth must be between 1 and 30");
    chain_out = make_chain(ctx, depth);
    PrenormOptions po;
    po.grid = ctx.opt.grid;
    po.sup_samples = ctx.opt.sup_samples;
    po.seed = ctx.opt.seed;
    po.exec = ctx.exec();
    return PrenormTable::build(DyadicFamily::build(chain_out, depth), po);
}

void cmd_prenorm(Context& ctx) {
    NeighborhoodChain chain;
    const auto tab = build_table(ctx, chain);
    PrenormCheckOptions pc;
    pc.budget = ctx.opt.samples;
    pc.seed = ctx.opt.seed;
    pc.exec = ctx.exec();
    if (ctx.opt.tol && !tab.is_exact()) pc.tolerance = *ctx.opt.tol;
    add_properties(ctx, prenorm_check(tab, pc));
    ctx.results["depth"] = tab.family().depth();
    ctx.results["f_error_bound"] = tab.f_error_bound();
    ctx.results["N_is_lower_bound"] = tab.N_is_lower_bound();

    std::string csv;
    if (tab.is_exact()) {
        csv = "element,f,N\n";
        for (std::size_t i = 0; i < tab.points().size(); ++i)
            csv += std::to_string(tab.points()[i].index()) + "," + format_double(tab.f_values()[i]) + "," +
                   format_double(tab.N_values()[i]) + "\n";
        ctx.results["f"] = tab.f_values();
        ctx.results["N"] = tab.N_values();
    } else {
        csv = "x,y,N\n";
        for (std::size_t i = 0; i < tab.points().size(); ++i) {
            const Complex p = tab.points()[i].point();
            csv += format_double(p.real()) + "," + format_double(p.imag()) + "," + format_double(tab.N_values()[i]) + "\n";
        }
        ctx.results["grid"] = tab.grid();
        ctx.results["grid_points"] = tab.points().size();
    }
    write_file(ctx.artifact("prenorm.csv"), csv);
    ctx.results["artifact"] = "prenorm.csv";
    ctx.lines.push_back("N table with " + std::to_string(tab.points().size()) + " rows written to prenorm.csv");
}

void cmd_metric(Context& ctx) {
    NeighborhoodChain chain;
    const auto tab = build_table(ctx, chain);
    SubgyroHandle P;
    if (ctx.carrier.finite) {
        P = make_subgyro(ctx.finite_ptr(), chain.back().indices());
    } else {
        P = make_subgyro(ctx.carrier.carrier, std::vector<Element>{ctx.c().identity()});
    }
    MetricCheckOptions mo;
    mo.budget = ctx.opt.samples;
    mo.seed = ctx.opt.seed;
    mo.exec = ctx.exec();
    if (ctx.opt.tol && !tab.is_exact()) mo.tolerance = *ctx.opt.tol;
    add_properties(ctx, metric_check(ctx.c(), P, tab, mo));
    if (ctx.carrier.finite) {
        const std::size_t n = ctx.finite().table().order();
        json rows = json::array();
        for (Index x = 0; x < n; ++x) {
            json row = json::array();
            for (Index y = 0; y < n; ++y) row.push_back(coset_metric(ctx.c(), P, tab, Element(x), Element(y)));
            rows.push_back(row);
        }
        ctx.results["distances"] = rows;
    }
}

void cmd_probe(Context& ctx) {
    if (ctx.opt.x.empty()) throw UsageError("probe needs --x");
    const Element x = parse_element(ctx.c(), ctx.opt.x);
    NssProbe pr;
    if (ctx.carrier.disk) {
        pr = nss_probe(ctx.carrier.carrier, ctx.opt.radius.value_or(0.5), x, ctx.opt.cap);
        ctx.results["radius"] = ctx.opt.radius.value_or(0.5);
    } else {
        if (ctx.opt.U.empty()) throw UsageError("probe on this carrier needs --U");
        pr = nss_probe(ctx.carrier.carrier, parse_elements(ctx.c(), ctx.opt.U), x, ctx.opt.cap);
    }
    ctx.results["outcome"] = to_string(pr.outcome);
    ctx.results["step"] = pr.step;
    ctx.results["round_extent"] = pr.round_extent;
    if (pr.escapee) ctx.results["escapee"] = element_json(*pr.escapee);
    ctx.exhausted = pr.outcome == NssProbe::Outcome::inconclusive;
    std::string s = "probe " + to_string(pr.outcome);
    if (pr.outcome == NssProbe::Outcome::escaped) s += " at step " + std::to_string(pr.step);
    s += "; extents";
    for (double e : pr.round_extent) s += " " + format_double(e);
    ctx.lines.push_back(s);
}

void cmd_search(Context& ctx) {
    if (ctx.opt.order == 0) throw UsageError("search needs --order");
    SearchOptions so;
    if (ctx.opt.budget) so.budget = *ctx.opt.budget;
    so.exec = ctx.exec();
    const auto r = search_small(ctx.opt.order, so);
    ctx.exhausted = r.exhausted;
    ctx.results["order"] = ctx.opt.order;
    ctx.results["nodes"] = r.nodes;
    ctx.results["exhausted"] = r.exhausted;
    json tables = json::array();
    std::size_t nondegenerate = 0;
    for (std::size_t k = 0; k < r.tables.size(); ++k) {
        const auto& t = r.tables[k];
        const auto fc = std::make_shared<const FiniteCarrier>(std::make_shared<const CayleyTable>(t), false);
        const bool degenerate = is_degenerate_group(*fc).degenerate;
        if (!degenerate) ++nondegenerate;
        const std::string file = "search_n" + std::to_string(ctx.opt.order) + "_" + std::to_string(k) + ".tbl";
        write_file(ctx.artifact(file),
                   write_table_text(t, {{"name", t.name()}, {"degenerate", degenerate ? "yes" : "no"}}));
        tables.push_back({{"file", file}, {"degenerate", degenerate}, {"rows", t.rows()}});
    }
    ctx.results["count"] = r.tables.size();
    ctx.results["nondegenerate"] = nondegenerate;
    ctx.results["tables"] = tables;
    ctx.lines.push_back(std::to_string(r.tables.size()) + " tables of order " + std::to_string(ctx.opt.order) + " (" +
                        std::to_string(nondegenerate) + " with nontrivial gyrations)" +
                        (r.exhausted ? ", budget exhausted" : ""));
}

// ---------------------------------------------------------------- driver

void add_common(CLI::App* app, Options& o) {
    app->add_option("--seed", o.seed, "seed for sampled checks")->capture_default_str();
    app->add_option("--samples", o.samples, "sampled tuples per property")->capture_default_str();
    app->add_option("--tol", o.tol, "equality tolerance");
    app->add_option("--depth", o.depth, "dyadic depth");
    app->add_option("--budget", o.budget, "node or element budget");
    app->add_option("--out", o.out, "output directory (default $GYRO_OUT_DIR or .)");
    app->add_flag("--strict", o.strict, "treat an exhausted budget as failure");
    app->add_flag("--serial", o.serial, "run kernels on one thread");
    app->add_flag("--mobius", o.mobius, "Mobius disk carrier");
    app->add_flag("--klein4", o.klein4, "Klein four-group");
    app->add_option("--cyclic", o.cyclic, "cyclic group of order N");
    app->add_option("--table", o.table, "table file (text or JSON)");
    app->add_option("--carrier", o.carrier, "carrier spec, e.g. cyclic:4*mobius");
}

void add_chain_flags(CLI::App* app, Options& o) {
    app->add_option("--sets", o.sets, "finite chain, ';'-separated index lists (G = everything)");
    app->add_option("--radii", o.radii, "disk chain: geometric or harmonic")->capture_default_str();
    app->add_option("--first", o.first, "geometric chain: first radius");
    app->add_option("--ratio", o.ratio, "geometric chain: ratio");
}

using Handler = std::function<void(Context&)>;

struct CommandSpec {
    const char* name;
    const char* help;
    Handler run;
    bool validate;
    bool needs_carrier = true;
};

const std::vector<CommandSpec>& commands() {
    static const std::vector<CommandSpec> specs = {
        {"verify", "check the gyrogroup axioms and derived identities", cmd_verify, false},
        {"gyr-table", "tabulate or evaluate gyrations", cmd_gyr_table, true},
        {"subgyro", "test or generate a subgyrogroup", cmd_subgyro, true},
        {"cosets", "left coset decomposition", cmd_cosets, true},
        {"quotient", "quotient table by an L-subgyrogroup", cmd_quotient, true},
        {"setcheck", "disjointness equivalence on subset triples", cmd_setcheck, true},
        {"chain", "validate a neighbourhood chain", cmd_chain, true},
        {"prenorm", "build and check the prenorm", cmd_prenorm, true},
        {"metric", "check the coset metric", cmd_metric, true},
        {"probe", "iterate the closure of one element", cmd_probe, true},
        {"search", "enumerate small gyrogroups", cmd_search, true, false},
    };
    return specs;
}

/// The command line without the output directory.
std::vector<std::string> echo_args(const std::vector<std::string>& args) {
    std::vector<std::string> out;
    for (std::size_t k = 0; k < args.size(); ++k) {
        if (args[k] == "--out") {
            ++k;
            continue;
        }
        if (args[k].rfind("--out=", 0) == 0) continue;
        out.push_back(args[k]);
    }
    return out;
}

void write_report(const Context& ctx, const std::string& status, const json& error) {
    json doc;
    doc["command"] = echo_args(ctx.args);
    doc["seed"] = ctx.opt.seed;
    doc["carrier"] = ctx.carrier.carrier ? json(ctx.carrier.carrier->describe()) : json(nullptr);
    doc["status"] = status;
    doc["budget_exhausted"] = ctx.exhausted;
    json props = json::array();
    for (const auto& p : ctx.report.properties()) props.push_back(property_json(p));
    doc["properties"] = props;
    doc["results"] = ctx.results;
    doc["budget_consumed"] = ctx.report.budget_consumed();
    if (!error.is_null()) doc["error"] = error;
    write_file(ctx.out_dir / (ctx.command + ".report.json"), doc.dump(2) + "\n");
}

std::string tuple_text(const Tuple& t) { return t.empty() ? "" : " " + to_string(t); }

void print_summary(const Context& ctx, const std::string& status, std::ostream& out, double seconds) {
    out << ctx.command << ": " << status << "\n";
    if (ctx.carrier.carrier) out << "carrier: " << ctx.carrier.carrier->describe() << "\n";
    for (const auto& p : ctx.report.properties()) {
        out << "  " << to_string(p.status) << "  " << p.name << "  checks=" << p.checks;
        if (p.max_residual > 0) out << " max_residual=" << format_double(p.max_residual);
        if (p.exhaustive) out << " exhaustive";
        if (p.counterexample)
            out << "  counterexample" << tuple_text(p.counterexample->tuple)
                << (p.counterexample->detail.empty() ? "" : " (" + p.counterexample->detail + ")");
        if (!p.note.empty()) out << "  [" << p.note << "]";
        out << "\n";
    }
    for (const auto& l : ctx.lines) out << l << "\n";
    if (ctx.exhausted) out << "budget exhausted; results are partial\n";
    out << "report: " << (ctx.out_dir / (ctx.command + ".report.json")).string() << "\n";
    char buf[48];
    std::snprintf(buf, sizeof buf, "elapsed: %.3f s\n", seconds);
    out << buf;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"gyro: gyrogroup verification toolkit", "gyro"};
    app.require_subcommand(1);
    Options opt;
    std::map<std::string, CLI::App*> subs;
    for (const auto& spec : commands()) {
        auto* sub = app.add_subcommand(spec.name, spec.help);
        add_common(sub, opt);
        subs[spec.name] = sub;
    }
    subs["subgyro"]->add_option("--sub", opt.sub, "members");
    subs["subgyro"]->add_option("--generate", opt.generate, "seed elements for a generated closure");
    subs["subgyro"]->add_option("--cap", opt.cap, "closure rounds")->capture_default_str();
    subs["cosets"]->add_option("--sub", opt.sub, "subgyrogroup indices")->required();
    subs["quotient"]->add_option("--sub", opt.sub, "subgyrogroup indices")->required();
    subs["quotient"]->add_option("--format", opt.format, "text or json")->capture_default_str();
    subs["setcheck"]->add_option("--A", opt.A, "first set");
    subs["setcheck"]->add_option("--B", opt.B, "second set");
    subs["setcheck"]->add_option("--C", opt.C, "third set");
    subs["gyr-table"]->add_option("--a", opt.a);
    subs["gyr-table"]->add_option("--b", opt.b);
    subs["gyr-table"]->add_option("--z", opt.z);
    for (const char* name : {"chain", "prenorm", "metric"}) add_chain_flags(subs[name], opt);
    subs["chain"]->add_option("--check", opt.check, "prenorm, base or invariant")->capture_default_str();
    subs["chain"]->add_option("--F", opt.F, "invariant set (indices) or ball radius");
    for (const char* name : {"prenorm", "metric"}) {
        subs[name]->add_option("--grid", opt.grid, "disk grid points per axis")->capture_default_str();
        subs[name]->add_option("--sup-samples", opt.sup_samples, "disk supremum samples")->capture_default_str();
    }
    subs["probe"]->add_option("--x", opt.x, "starting element");
    subs["probe"]->add_option("--radius", opt.radius, "disk ball radius (default 0.5)");
    subs["probe"]->add_option("--U", opt.U, "finite neighbourhood");
    subs["probe"]->add_option("--cap", opt.cap, "rounds")->capture_default_str();
    subs["search"]->add_option("--order", opt.order, "table order")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return exit_ok;
        }
        err << "gyro: " << e.what() << "\n";
        return exit_usage;
    }

    Context ctx;
    const CommandSpec* spec = nullptr;
    for (const auto& s : commands())
        if (subs[s.name]->parsed()) spec = &s;
    ctx.command = spec->name;
    ctx.opt = opt;
    ctx.args = args;
    if (!opt.out.empty()) {
        ctx.out_dir = opt.out;
    } else if (const char* env = std::getenv(out_dir_env); env && *env) {
        ctx.out_dir = env;
    } else {
        ctx.out_dir = ".";
    }

    const auto start = std::chrono::steady_clock::now();
    auto elapsed = [&] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    };
    try {
        std::error_code ec;
        fs::create_directories(ctx.out_dir, ec);
        if (!fs::is_directory(ctx.out_dir)) throw UsageError("cannot create output directory " + ctx.out_dir.string());
        if (spec->needs_carrier) ctx.carrier = make_carrier(opt, spec->validate);
        spec->run(ctx);
    } catch (const WitnessError& e) {
        ctx.failed = true;
        PropertyResult p = single_check(e.property(), false, e.witness(), e.what());
        ctx.report.add(p);
        try {
            write_report(ctx, "fail", json{{"type", "witness"}, {"message", e.what()}});
        } catch (const Error& w) {
            err << "gyro: " << w.what() << "\n";
            return exit_usage;
        }
        print_summary(ctx, "FAIL", out, elapsed());
        err << "gyro: " << e.what() << "\n";
        return exit_failed;
    } catch (const ChainInvalid& e) {
        ctx.failed = true;
        ctx.report.add(single_check("chain_valid", false, {}, e.what()));
        write_report(ctx, "fail", json{{"type", "chain_invalid"}, {"message", e.what()}});
        print_summary(ctx, "FAIL", out, elapsed());
        err << "gyro: " << e.what() << "\n";
        return exit_failed;
    } catch (const std::exception& e) {
        err << "gyro: " << e.what() << "\n";
        return exit_usage;
    }

    const bool pass = ctx.report.passed() && !ctx.failed && !(ctx.exhausted && opt.strict);
    const std::string status = pass ? "pass" : "fail";
    try {
        write_report(ctx, status, nullptr);
    } catch (const std::exception& e) {
        err << "gyro: " << e.what() << "\n";
        return exit_usage;
    }
    print_summary(ctx, pass ? "PASS" : "FAIL", out, elapsed());
    return pass ? exit_ok : exit_failed;
}

}  // namespace gyro::cli
