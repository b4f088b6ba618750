#include <CLI11.hpp>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <string>

#include "aeqd/experiments.hpp"
#include "aeqd/meanvalue.hpp"
#include "aeqd/primes.hpp"
#include "aeqd/report.hpp"
#include "aeqd/sieve.hpp"

using namespace aeqd;

namespace {

struct Options {
    uint64_t x = 1000000;
    uint64_t q = 1;
    uint64_t r = 0;
    double epsilon = 0.5;
    double y = 0.0;  // 0 = derive from the recipe
    double z = 0.0;
    uint64_t segment_size = uint64_t{1} << 20;
    unsigned threads = 0;
    std::string output;
    std::string format = "json";
    bool big = false;
    std::string f_name = "eA";
    size_t chi_index = 0;
    std::string cache_path;
    std::string expectations_path;
};

SieveOptions sieve_opt(const Options& o) {
    SieveOptions s;
    s.segment_size = o.segment_size;
    s.threads = o.threads;
    return s;
}

void emit(const Options& o, const std::string& text) {
    if (o.output.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
    } else {
        std::ofstream out(o.output);
        if (!out) throw std::runtime_error("cannot open output path " + o.output);
        out << text;
    }
}

PrimeTable table_for_sieve(uint64_t x) {
    return build_prime_table(std::max<uint64_t>(isqrt(x) + 1, 64));
}

int cmd_sieve(const Options& o) {
    auto table = table_for_sieve(o.x);
    auto opt = sieve_opt(o);
    std::vector<SegmentRecord> all(o.x);
    for_each_segment(1, o.x, table, opt, [&](unsigned, const std::vector<SegmentRecord>& recs) {
        for (const auto& r : recs) all[r.n - 1] = r;
    });
    if (!o.cache_path.empty()) write_segment_cache_file(o.cache_path, all);
    if (o.format == "csv") {
        std::ostringstream out;
        out << "n,bigA,phi,p1,p2,maxSquaredPrime\n";
        for (const auto& r : all)
            out << r.n << ',' << r.bigA << ',' << r.phi << ',' << r.p1 << ',' << r.p2 << ','
                << r.maxSquaredPrime << '\n';
        emit(o, out.str());
    } else {
        nlohmann::json j;
        j["x"] = o.x;
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& r : all)
            rows.push_back({{"n", r.n},
                            {"bigA", r.bigA},
                            {"phi", r.phi},
                            {"p1", r.p1},
                            {"p2", r.p2},
                            {"maxSquaredPrime", r.maxSquaredPrime}});
        j["records"] = std::move(rows);
        emit(o, j.dump(2));
    }
    return 0;
}

int cmd_smooth(const Options& o) {
    auto table = table_for_sieve(o.x);
    uint64_t z = static_cast<uint64_t>(o.z);
    if (z < 1) throw CLI::ValidationError("--z", "smooth requires z >= 1");
    emit(o, std::to_string(psi_smooth_count(o.x, z, table, sieve_opt(o))));
    return 0;
}

int cmd_chars(const Options& o) {
    auto table = enumerate_characters(o.q);
    nlohmann::json j;
    j["modulus"] = o.q;
    j["phi"] = table.group().phi();
    j["generator_orders"] = table.group().generator_orders();
    nlohmann::json chars = nlohmann::json::array();
    for (size_t i = 0; i < table.size(); ++i)
        chars.push_back({{"index", i},
                         {"conductor", table[i].conductor},
                         {"order", table[i].order()},
                         {"parity", table[i].parity()}});
    j["characters"] = std::move(chars);
    emit(o, j.dump(2));
    return 0;
}

int cmd_rho(const Options& o) {
    emit(o, characters_json(enumerate_characters(o.q)).dump(2));
    return 0;
}

int cmd_alpha(const Options& o) {
    emit(o, rational_str(alpha(o.q).value));
    return 0;
}

int cmd_exp_a(const Options& o) {
    if (o.r >= o.q) throw CLI::ValidationError("--r", "require 0 <= r < q");
    auto table = table_for_sieve(o.x);
    auto hist = histogram_A(o.x, o.q, table, sieve_opt(o));
    auto s = exp_sum_A(hist, o.r);
    if (o.format == "json") {
        nlohmann::json j;
        j["x"] = o.x;
        j["q"] = o.q;
        j["r"] = o.r;
        j["re"] = fmt12(s.real());
        j["im"] = fmt12(s.imag());
        emit(o, j.dump(2));
    } else {
        emit(o, fmt12(s.real()) + " " + fmt12(s.imag()));
    }
    return 0;
}

int cmd_phi_dist(const Options& o) {
    auto table = table_for_sieve(o.x);
    auto hist = histogram_phi(o.x, o.q, table, sieve_opt(o));
    uint64_t g = std::gcd(o.q, uint64_t{6});
    if (g == 1 || g == 3) {
        DiscrepancyReport rep =
            g == 1 ? theorem13_report(hist, o.epsilon) : theorem14_report(hist, o.epsilon);
        if (o.format == "csv")
            emit(o, csv_header() + discrepancy_csv(rep, rep.model));
        else
            emit(o, discrepancy_json(rep).dump(2));
        return 0;
    }
    // even q: raw counts only
    if (o.format == "csv") {
        std::ostringstream out;
        out << "a,count\n";
        for (uint64_t a = 0; a < o.q; ++a) out << a << ',' << hist.counts[a] << '\n';
        emit(o, out.str());
    } else {
        nlohmann::json j;
        j["x"] = o.x;
        j["q"] = o.q;
        j["counts"] = hist.counts;
        j["coprime_total"] = hist.coprime_total;
        emit(o, j.dump(2));
    }
    return 0;
}

int cmd_mean_value(const Options& o) {
    double x = static_cast<double>(o.x);
    double y = o.y, z = o.z;
    if (y <= 0.0 || z <= 0.0) {
        auto rec = recipe_yz(x, o.epsilon);
        if (y <= 0.0) y = rec.y;
        if (z <= 0.0) z = rec.z;
    }
    check_bound_params(x, y, z, 1.0);  // throws naming the violated inequality

    MultFunctionSpec f;
    std::complex<double> rho;
    if (o.f_name == "eA") {
        if (o.r >= o.q) throw CLI::ValidationError("--r", "require 0 <= r < q");
        f = exp_a_spec(o.q, o.r);
        rho = {boost::rational_cast<double>(ramanujan_rho(o.q, o.r)), 0.0};
    } else if (o.f_name == "signA") {
        f = sign_a_spec();
        rho = {-1.0, 0.0};
    } else if (o.f_name == "chiphi") {
        auto chars = enumerate_characters(o.q);
        if (o.chi_index >= chars.size())
            throw CLI::ValidationError("--chi-index", "index out of range");
        const auto& chi = chars[o.chi_index];
        f = chi_phi_spec(chi);
        if (o.q % 2 == 1)
            rho = {boost::rational_cast<double>(rho_chi_closed(chi)), 0.0};
        else
            rho = rho_chi_bruteforce(chi);
    } else {
        throw CLI::ValidationError("--f", "unknown function name " + o.f_name);
    }

    double ymax = std::min(x, 1e6);
    auto table = build_prime_table(
        std::max<uint64_t>({isqrt(o.x) + 1, static_cast<uint64_t>(ymax) + 1,
                            static_cast<uint64_t>(y) + 1, 64}));
    auto fit = fit_hypothesis(f, std::max(y, 5.0), ymax, 16, rho, table);
    auto b = theorem_bound(f, x, y, z, 1.0, fit.fitted_m_err, rho, table, sieve_opt(o));

    nlohmann::json j = bound_json(b);
    j["f"] = f.name;
    j["effective_y"] = fmt12(y);
    j["effective_z"] = fmt12(z);
    j["epsilon"] = o.epsilon;
    j["fit_grid_max"] = fmt12(ymax);
    emit(o, j.dump(2));
    return 0;
}

std::vector<uint64_t> default_grid(bool big) {
    std::vector<uint64_t> g = {10000, 100000, 1000000, 10000000};
    if (big) g.push_back(100000000);
    return g;
}

int cmd_lemma42(const Options& o) {
    auto grid = default_grid(o.big);
    auto table = build_prime_table(grid.back());
    auto pts = lemma42_profile(o.q, grid, table);
    if (o.format == "csv") {
        std::ostringstream out;
        out << "x,residual\n";
        for (const auto& p : pts) out << p.x << ',' << fmt12(p.residual) << '\n';
        emit(o, out.str());
    } else {
        nlohmann::json j;
        j["q"] = o.q;
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& p : pts) rows.push_back({{"x", p.x}, {"residual", fmt12(p.residual)}});
        j["points"] = std::move(rows);
        emit(o, j.dump(2));
    }
    return 0;
}

int cmd_prop41(const Options& o) {
    auto table = table_for_sieve(o.x);
    auto hist = histogram_phi(o.x, o.q, table, sieve_opt(o));
    emit(o, fmt12(prop41_ratio(hist)));
    return 0;
}

int cmd_dp_mod3(const Options& o) {
    uint64_t x = o.big ? 100000000 : o.x;
    auto table = table_for_sieve(x);
    auto hist = histogram_phi(x, 3, table, sieve_opt(o));
    auto [c1, c2] = dence_pomerance(hist);
    nlohmann::json j;
    j["x"] = x;
    j["c1"] = fmt12(c1);
    j["c2"] = fmt12(c2);
    j["ratio"] = fmt12(c1 / c2);
    emit(o, j.dump(2));
    return 0;
}

int cmd_reduce_check(const Options& o) {
    auto table = table_for_sieve(o.x);
    auto chk = verify_reduction_inequality(o.x, o.q, o.r, table, sieve_opt(o));
    nlohmann::json j;
    j["x"] = o.x;
    j["q"] = o.q;
    j["a"] = o.r;
    j["holds"] = chk.holds;
    j["lhs_count"] = chk.lhs_count;
    j["rhs_count"] = chk.rhs_count;
    emit(o, j.dump(2));
    return 0;
}

int cmd_report_all(const Options& o) {
    uint64_t x = o.x;
    auto grid = default_grid(o.big);
    while (!grid.empty() && grid.back() > x) grid.pop_back();
    if (grid.empty() || grid.back() != x) grid.push_back(x);
    uint64_t table_limit = std::max(grid.back(), isqrt(x) + 1);
    auto table = build_prime_table(table_limit);
    auto opt = sieve_opt(o);

    std::vector<uint64_t> a_mods = {2, 3, 4, 5, 6, 7, 8, 9, 10, 30};
    std::vector<uint64_t> phi_mods = {3, 5, 15, 21, 25, 35, 105};
    std::vector<HistRequest> reqs;
    for (uint64_t q : a_mods) reqs.push_back({HistKind::AModQ, q});
    for (uint64_t q : phi_mods) reqs.push_back({HistKind::PhiModQ, q});
    auto hists = build_histograms(x, reqs, table, opt);

    ExpectationSet expect;
    std::string epath = o.expectations_path;
    if (epath.empty() && std::filesystem::exists("data/expectations.txt"))
        epath = "data/expectations.txt";
    if (!epath.empty()) expect = load_expectations(epath);

    nlohmann::json j;
    j["x"] = x;
    j["epsilon"] = o.epsilon;
    nlohmann::json checks = nlohmann::json::array();
    int failures = 0;
    auto record = [&](const std::string& key, double value) {
        bool pass = expect.within(key, value);
        nlohmann::json c;
        c["key"] = key;
        c["value"] = fmt12(value);
        if (expect.has(key)) {
            c["limit"] = fmt12(expect.limits.at(key));
            c["pass"] = pass;
        }
        checks.push_back(std::move(c));
        if (!pass) ++failures;
    };

    nlohmann::json t12 = nlohmann::json::array();
    for (size_t i = 0; i < a_mods.size(); ++i) {
        auto rep = theorem12_report(hists[i], o.epsilon);
        t12.push_back(discrepancy_json(rep));
        double rel = rep.max_abs_dev * static_cast<double>(rep.q) / static_cast<double>(x);
        record("t12.q" + std::to_string(rep.q) + ".maxrel", rel);
    }
    j["theorem12"] = std::move(t12);

    nlohmann::json t13 = nlohmann::json::array();
    nlohmann::json t14 = nlohmann::json::array();
    for (size_t i = 0; i < phi_mods.size(); ++i) {
        const auto& h = hists[a_mods.size() + i];
        uint64_t g = std::gcd(h.q, uint64_t{6});
        if (g == 1) {
            auto rep = theorem13_report(h, o.epsilon);
            t13.push_back(discrepancy_json(rep));
            double rel = 0.0;
            for (const auto& c : rep.classes)
                if (c.expected > 0) rel = std::max(rel, c.deviation / c.expected);
            record("t13.q" + std::to_string(h.q) + ".maxrel", rel);
        } else if (g == 3) {
            auto rep = theorem14_report(h, o.epsilon);
            t14.push_back(discrepancy_json(rep));
            double rel = 0.0;
            for (const auto& c : rep.classes)
                if (c.expected > 0) rel = std::max(rel, c.deviation / c.expected);
            record("t14.q" + std::to_string(h.q) + ".maxrel", rel);
        }
        if (h.q % 2 == 1) {
            double ratio = prop41_ratio(h);
            record("prop41.q" + std::to_string(h.q) + ".ratio_max", ratio);
            record("prop41.q" + std::to_string(h.q) + ".inv_ratio_max", 1.0 / ratio);
        }
    }
    j["theorem13"] = std::move(t13);
    j["theorem14"] = std::move(t14);

    // sign-of-A decay, from the A mod 2 histogram
    {
        const auto& h2 = hists[0];
        double s = std::abs(exp_sum_A(h2, 1));
        double norm = static_cast<double>(x) / std::pow(std::log(static_cast<double>(x)), 0.6);
        j["signA"] = {{"abs_sum", fmt12(s)}, {"normalized", fmt12(s / norm)}};
        record("signA.normalized", s / norm);
    }

    // phi mod 3 densities
    {
        const auto& h3 = hists[a_mods.size()];
        auto [c1, c2] = dence_pomerance(h3);
        j["dence_pomerance"] = {{"c1", fmt12(c1)}, {"c2", fmt12(c2)}, {"ratio", fmt12(c1 / c2)}};
        record("dp.c1.err", std::abs(c1 - 0.6109) / 0.6109);
        record("dp.c2.err", std::abs(c2 - 0.3284) / 0.3284);
        record("dp.ratio.err", std::abs(c1 / c2 - 0.6109 / 0.3284) / (0.6109 / 0.3284));
    }

    nlohmann::json l42 = nlohmann::json::array();
    for (uint64_t q : {1ull, 5ull, 7ull, 15ull, 35ull}) {
        auto pts = lemma42_profile(q, grid, table);
        double lo = pts[0].residual, hi = pts[0].residual;
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& p : pts) {
            lo = std::min(lo, p.residual);
            hi = std::max(hi, p.residual);
            rows.push_back({{"x", p.x}, {"residual", fmt12(p.residual)}});
        }
        l42.push_back({{"q", q}, {"points", rows}, {"oscillation", fmt12(hi - lo)}});
        record("lemma42.q" + std::to_string(q) + ".osc", hi - lo);
        if (q == 1) record("lemma42.q1.mertens_err", std::abs(pts.back().residual - 0.2615));
    }
    j["lemma42"] = std::move(l42);

    j["checks"] = std::move(checks);
    j["failures"] = failures;
    emit(o, j.dump(2));
    return failures == 0 ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"bulk arithmetic-function sieves, Dirichlet-character constants, and "
                 "equidistribution experiments"};
    app.require_subcommand(1);
    Options o;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--segment-size", o.segment_size, "sieve segment length");
        sub->add_option("--threads", o.threads, "worker threads (0 = hardware)");
        sub->add_option("--output", o.output, "write output to this path instead of stdout");
        sub->add_option("--format", o.format, "output format")
            ->check(CLI::IsMember({"csv", "json"}));
    };

    auto* sieve = app.add_subcommand("sieve", "per-integer sieve records over [1, x]");
    sieve->add_option("--x", o.x, "upper limit")->required();
    sieve->add_option("--cache", o.cache_path, "also write a binary segment cache here");
    add_common(sieve);

    auto* smooth = app.add_subcommand("smooth", "count z-smooth integers up to x");
    smooth->add_option("--x", o.x)->required();
    smooth->add_option("--z", o.z, "smoothness bound")->required();
    add_common(smooth);

    auto* chars = app.add_subcommand("chars", "unit-group and character structure mod q");
    chars->add_option("--q", o.q)->required();
    add_common(chars);

    auto* rho = app.add_subcommand("rho", "character table with mean densities rho_chi");
    rho->add_option("--q", o.q)->required();
    add_common(rho);

    auto* al = app.add_subcommand("alpha", "alpha(q) as an exact rational");
    al->add_option("--q", o.q)->required();
    add_common(al);

    auto* ea = app.add_subcommand("exp-a", "exponential sum of e(r A(n)/q) over n <= x");
    ea->add_option("--x", o.x)->required();
    ea->add_option("--q", o.q)->required();
    ea->add_option("--r", o.r)->required();
    add_common(ea);

    auto* pd = app.add_subcommand("phi-dist", "distribution of phi(n) mod q");
    pd->add_option("--x", o.x)->required();
    pd->add_option("--q", o.q)->required();
    pd->add_option("--epsilon", o.epsilon);
    add_common(pd);

    auto* mv = app.add_subcommand("mean-value", "mean-value bound breakdown for a built-in f");
    mv->add_option("--f", o.f_name, "eA | signA | chiphi");
    mv->add_option("--x", o.x)->required();
    mv->add_option("--q", o.q);
    mv->add_option("--r", o.r);
    mv->add_option("--chi-index", o.chi_index);
    mv->add_option("--epsilon", o.epsilon);
    mv->add_option("--y", o.y, "override the derived y");
    mv->add_option("--z", o.z, "override the derived z");
    add_common(mv);

    auto* l42 = app.add_subcommand("lemma42", "prime reciprocal residual profile");
    l42->add_option("--q", o.q)->required();
    l42->add_flag("--big", o.big, "extend the x grid to 1e8");
    add_common(l42);

    auto* p41 = app.add_subcommand("prop41", "coprimality density ratio");
    p41->add_option("--x", o.x)->required();
    p41->add_option("--q", o.q)->required();
    add_common(p41);

    auto* dp = app.add_subcommand("dp-mod3", "phi mod 3 density constants");
    dp->add_option("--x", o.x)->required();
    dp->add_flag("--big", o.big, "use x = 1e8");
    add_common(dp);

    auto* rc = app.add_subcommand("reduce-check", "quarter-range reduction inequality");
    rc->add_option("--x", o.x)->required();
    rc->add_option("--q", o.q)->required();
    rc->add_option("--r", o.r, "residue class a mod q")->required();
    add_common(rc);

    auto* ra = app.add_subcommand("report-all", "full experiment bundle with regression checks");
    ra->add_option("--x", o.x)->required();
    ra->add_option("--epsilon", o.epsilon);
    ra->add_flag("--big", o.big, "extend grids to 1e8");
    ra->add_option("--expectations", o.expectations_path, "regression limits file");
    add_common(ra);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (sieve->parsed()) return cmd_sieve(o);
        if (smooth->parsed()) return cmd_smooth(o);
        if (chars->parsed()) return cmd_chars(o);
        if (rho->parsed()) return cmd_rho(o);
        if (al->parsed()) return cmd_alpha(o);
        if (ea->parsed()) return cmd_exp_a(o);
        if (pd->parsed()) return cmd_phi_dist(o);
        if (mv->parsed()) return cmd_mean_value(o);
        if (l42->parsed()) return cmd_lemma42(o);
        if (p41->parsed()) return cmd_prop41(o);
        if (dp->parsed()) return cmd_dp_mod3(o);
        if (rc->parsed()) return cmd_reduce_check(o);
        if (ra->parsed()) return cmd_report_all(o);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
