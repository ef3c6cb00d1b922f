// numdim: command-line front end for the section-count engine and the
// numerical-dimension calculators.
//
// Exit codes: 0 success / verdict pass, 1 verdict fail or internal failure,
// 2 domain error, 3 parse error.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "numdim.hpp"

namespace {

using namespace numdim;
using json = nlohmann::ordered_json;

enum class Format { table, csv, json };

struct OutputFormat {
    Format kind = Format::table;
    int precision = 20;
};

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitDomain = 2;
constexpr int kExitParse = 3;

EngineOptions engine_options() {
    EngineOptions options;
    if (const char* cap = std::getenv("NUMDIM_ITERATION_CAP")) {
        Integer value = parse_integer(cap);
        if (value < 1 || value > Integer(std::numeric_limits<std::int64_t>::max()))
            throw ParseError(0, "NUMDIM_ITERATION_CAP must be a positive 64-bit integer");
        options.iteration_cap = value.convert_to<std::int64_t>();
    }
    return options;
}

GrowthBounds parse_bounds(const std::string& text) {
    std::size_t comma = text.find(',');
    if (comma == std::string::npos)
        throw ParseError(text.size(), "bounds must be 'c_lo,c_hi', got '" + text + "'");
    GrowthBounds b{parse_integer(std::string_view(text).substr(0, comma)),
                   parse_integer(std::string_view(text).substr(comma + 1))};
    if (b.lower < 0 || b.upper < 0)
        throw Error(ErrorKind::domain_error, "bounds must be nonnegative");
    return b;
}

std::pair<unsigned, unsigned> parse_exponent_range(const std::string& text) {
    std::size_t colon = text.find(':');
    if (colon == std::string::npos)
        throw ParseError(text.size(), "exponent range must be 'lo:hi', got '" + text + "'");
    Integer lo = parse_integer(std::string_view(text).substr(0, colon));
    Integer hi = parse_integer(std::string_view(text).substr(colon + 1));
    if (lo < 0 || hi > 4096 || lo > hi)
        throw Error(ErrorKind::domain_error, "exponent range needs 0 <= lo <= hi <= 4096, got '" + text + "'");
    return {lo.convert_to<unsigned>(), hi.convert_to<unsigned>()};
}

// Accepts a Q(sqrt2) literal, falling back to a plain decimal.
DegreeValue parse_degree_value(const std::string& text) {
    try {
        return parse_quadrat(text);
    } catch (const ParseError&) {
        return parse_decimal(text);
    }
}

void print_table(const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> width;
    for (const auto& row : rows)
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (width.size() <= i)
                width.push_back(0);
            width[i] = std::max(width[i], row[i].size());
        }
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            std::cout << (i ? "  " : "") << std::setw(static_cast<int>(width[i])) << row[i];
        std::cout << '\n';
    }
}

void print_fields(const std::vector<std::pair<std::string, std::string>>& fields) {
    std::size_t w = 0;
    for (const auto& [k, v] : fields)
        w = std::max(w, k.size());
    for (const auto& [k, v] : fields)
        std::cout << std::left << std::setw(static_cast<int>(w)) << k << std::right << "  " << v << '\n';
}

std::vector<std::string> table_row(const GrowthRecord& r) {
    return {r.m.str(), to_string(r.rounded.h1), to_string(r.rounded.h2), std::to_string(r.k_m),
            to_cstr(r.used_tau1), r.h0.str(), to_cstr(r.lower_ok), to_cstr(r.upper_ok)};
}

int cmd_h0(const std::string& m_text, const std::string& ample_text, const std::string& bounds_text,
           const OutputFormat& fmt) {
    Integer m = parse_integer(m_text);
    DivisorClass ample = parse_divisor(ample_text);
    GrowthBounds bounds = parse_bounds(bounds_text);
    GrowthRecord r = h0_perturbed(m, ample, bounds, engine_options());
    switch (fmt.kind) {
    case Format::csv:
        write_scan_csv(std::cout, {r});
        break;
    case Format::json: {
        json j = to_json(r);
        j["ample"] = to_string(r.ample);
        j["landed_h1"] = to_string(r.landed.h1);
        j["landed_h2"] = to_string(r.landed.h2);
        std::cout << j.dump(2) << '\n';
        break;
    }
    case Format::table:
        print_fields({{"m", r.m.str()},
                      {"ample", to_string(r.ample)},
                      {"rounded", to_string(r.rounded)},
                      {"k_m", std::to_string(r.k_m)},
                      {"landed", to_string(r.landed)},
                      {"used_tau1", to_cstr(r.used_tau1)},
                      {"h0", r.h0.str()},
                      {"lower_ok", to_cstr(r.lower_ok)},
                      {"upper_ok", to_cstr(r.upper_ok)}});
        break;
    }
    return kExitOk;
}

int scan_exit_code(const ScanResult& result) {
    for (const ScanFailure& f : result.failures) {
        std::cerr << "error at m = " << f.m << ": " << f.message << '\n';
    }
    for (const ScanFailure& f : result.failures)
        if (f.kind == ErrorKind::integrality_violation || f.kind == ErrorKind::nefification_failure)
            return kExitFail;
    if (!result.failures.empty())
        return kExitDomain;
    return result.pass() ? kExitOk : kExitFail;
}

int cmd_scan(const std::string& range_text, const std::string& ample_text, const std::string& bounds_text,
             const std::string& out_path, unsigned jobs, const OutputFormat& fmt) {
    auto [lo, hi] = parse_exponent_range(range_text);
    DivisorClass ample = parse_divisor(ample_text);
    GrowthBounds bounds = parse_bounds(bounds_text);
    ScanResult result = scan(powers_of_two(lo, hi), ample, bounds, engine_options(), jobs);

    if (!out_path.empty()) {
        std::ofstream file(out_path, std::ios::binary);
        if (!file)
            throw std::runtime_error("cannot open '" + out_path + "' for writing");
        write_scan_csv(file, result.records);
        std::cout << "wrote " << result.records.size() << " rows to " << out_path
                  << "; verdict: " << (result.pass() ? "pass" : "fail") << '\n';
        return scan_exit_code(result);
    }
    switch (fmt.kind) {
    case Format::csv:
        write_scan_csv(std::cout, result.records);
        break;
    case Format::json:
        std::cout << to_json(result, ample, bounds).dump(2) << '\n';
        break;
    case Format::table: {
        std::vector<std::vector<std::string>> rows{
            {"m", "rounded_h1", "rounded_h2", "k_m", "used_tau1", "h0", "lower_ok", "upper_ok"}};
        for (const GrowthRecord& r : result.records)
            rows.push_back(table_row(r));
        print_table(rows);
        std::cout << "verdict: " << (result.pass() ? "pass" : "fail") << " (" << result.records.size()
                  << " rows, bounds " << bounds.lower << " < h0/m^(3/2) < " << bounds.upper << ")\n";
        break;
    }
    }
    return scan_exit_code(result);
}

int cmd_classify(const std::string& divisor_text, const OutputFormat& fmt) {
    DivisorClass d = parse_divisor(divisor_text);
    ConeFlags f = classify(d);
    DeltaCoords c = to_delta(d);
    std::string ratio = f.big ? to_string(delta_ratio(d)) : "undefined";
    if (fmt.kind == Format::json) {
        json j;
        j["class"] = to_string(d);
        j["delta_plus"] = to_string(c.plus);
        j["delta_minus"] = to_string(c.minus);
        j["nef"] = f.nef;
        j["big"] = f.big;
        j["pseudoeffective"] = f.pseudoeffective;
        j["in_cone_c"] = f.in_cone_c;
        j["on_cone_c_boundary"] = f.on_cone_c_boundary;
        j["delta_ratio"] = ratio;
        std::cout << j.dump(2) << '\n';
    } else if (fmt.kind == Format::csv) {
        std::cout << "class,nef,big,pseudoeffective,in_cone_c,on_cone_c_boundary\n"
                  << '"' << to_string(d) << "\"," << to_cstr(f.nef) << ',' << to_cstr(f.big) << ','
                  << to_cstr(f.pseudoeffective) << ',' << to_cstr(f.in_cone_c) << ','
                  << to_cstr(f.on_cone_c_boundary) << '\n';
    } else {
        print_fields({{"class", to_string(d)},
                      {"delta coords", "(" + to_string(c.plus) + ", " + to_string(c.minus) + ")"},
                      {"delta_ratio", ratio},
                      {"nef", to_cstr(f.nef)},
                      {"big", to_cstr(f.big)},
                      {"pseudoeffective", to_cstr(f.pseudoeffective)},
                      {"in_cone_c", to_cstr(f.in_cone_c)},
                      {"on_cone_c_boundary", to_cstr(f.on_cone_c_boundary)}});
    }
    return kExitOk;
}

int cmd_normalize(const std::string& divisor_text, const OutputFormat& fmt) {
    DivisorClass d = parse_divisor(divisor_text);
    Normalization n = normalize_to_c(d, engine_options().iteration_cap);
    if (fmt.kind == Format::json) {
        json j;
        j["class"] = to_string(d);
        j["k"] = n.k;
        j["landed_h1"] = to_string(n.landed.h1);
        j["landed_h2"] = to_string(n.landed.h2);
        std::cout << j.dump(2) << '\n';
    } else if (fmt.kind == Format::csv) {
        std::cout << "k,landed_h1,landed_h2\n"
                  << n.k << ',' << to_string(n.landed.h1) << ',' << to_string(n.landed.h2) << '\n';
    } else {
        print_fields({{"class", to_string(d)}, {"k", std::to_string(n.k)}, {"landed", to_string(n.landed)}});
    }
    return kExitOk;
}

int cmd_invariants(const std::string& range_text, const OutputFormat& fmt) {
    auto [lo, hi] = parse_exponent_range(range_text);
    ScanResult result = scan(powers_of_two(lo, hi), DivisorClass::H1() + DivisorClass::H2(), {}, engine_options());
    if (!result.failures.empty())
        return scan_exit_code(result);
    ExponentFit fit = estimate_exponent(result.records);
    int kappa_sigma = static_cast<int>(floor(fit.slope).convert_to<long>());
    const QuadRat& lambda = builtin_geometry().lambda;
    NuVol nu = nu_vol(3, lambda, lambda);
    AssertedInvariants asserted;
    std::string slope = fixed(fit.slope, fmt.precision);

    if (fmt.kind == Format::json) {
        json j;
        j["kappa_sigma"] = kappa_sigma;
        j["kappa_sigma_real_estimate"] = slope;
        j["nu_vol"] = to_string(nu, fmt.precision);
        j["paper_asserted"] = {{"nu_bdpp", asserted.nu_bdpp}, {"kappa_nu", asserted.kappa_nu}};
        std::cout << j.dump(2) << '\n';
    } else if (fmt.kind == Format::csv) {
        std::cout << "kappa_sigma,kappa_sigma_real_estimate,nu_vol,nu_bdpp,kappa_nu\n"
                  << kappa_sigma << ',' << slope << ',' << to_string(nu, fmt.precision) << ',' << asserted.nu_bdpp
                  << ',' << asserted.kappa_nu << '\n';
    } else {
        print_fields({{"kappa_sigma", std::to_string(kappa_sigma) + "  (floor of fitted exponent)"},
                      {"kappa_sigma_real_estimate",
                       slope + "  (least squares over m = 2^" + std::to_string(lo) + "..2^" + std::to_string(hi) +
                           ", max residual " + fixed(fit.max_residual, 6) + ")"},
                      {"nu_vol", to_string(nu, fmt.precision)},
                      {"nu_bdpp", std::to_string(asserted.nu_bdpp) + "  asserted, not computed"},
                      {"kappa_nu", std::to_string(asserted.kappa_nu) + "  asserted, not computed"}});
    }
    return kExitOk;
}

int cmd_nu_vol(int dim, const std::string& lambda_text, const std::string& mu_text, const OutputFormat& fmt) {
    NuVol nu = nu_vol(dim, parse_degree_value(lambda_text), parse_degree_value(mu_text));
    if (fmt.kind == Format::json) {
        json j;
        j["nu_vol"] = to_string(nu, fmt.precision);
        j["exact"] = nu.exact.has_value();
        j["decimal"] = fixed(nu.value, fmt.precision);
        std::cout << j.dump(2) << '\n';
    } else if (fmt.kind == Format::csv) {
        std::cout << "nu_vol,exact,decimal\n"
                  << to_string(nu, fmt.precision) << ',' << to_cstr(nu.exact.has_value()) << ','
                  << fixed(nu.value, fmt.precision) << '\n';
    } else {
        print_fields({{"nu_vol", to_string(nu, fmt.precision)},
                      {"exact", to_cstr(nu.exact.has_value())},
                      {"decimal", fixed(nu.value, fmt.precision)}});
    }
    return kExitOk;
}

int cmd_vol_seq(int n_max, int dim, const std::string& lambda_text, const std::string& mu_text,
                const std::string& vol_text, const OutputFormat& fmt) {
    VolSequence seq = vol_sequence(n_max, dim, parse_quadrat(lambda_text), parse_quadrat(mu_text),
                                   parse_quadrat(vol_text));
    auto sci = [&](const Decimal60& x) { return x.str(fmt.precision, std::ios_base::scientific); };
    if (fmt.kind == Format::json) {
        json j;
        j["nu"] = to_string(seq.nu, fmt.precision);
        j["c_decreasing"] = seq.c_decreasing;
        j["sandwich_all"] = seq.sandwich_all;
        j["rows"] = json::array();
        for (const VolRow& r : seq.rows)
            j["rows"].push_back({{"n", r.n}, {"t_n", sci(r.t)}, {"vol_n", sci(r.vol)}, {"C_n", sci(r.c)},
                                 {"sandwich_ok", r.sandwich_ok}});
        std::cout << j.dump(2) << '\n';
    } else if (fmt.kind == Format::csv) {
        std::cout << "n,t_n,vol_n,C_n,sandwich_ok\n";
        for (const VolRow& r : seq.rows)
            std::cout << r.n << ',' << sci(r.t) << ',' << sci(r.vol) << ',' << sci(r.c) << ','
                      << to_cstr(r.sandwich_ok) << '\n';
    } else {
        std::vector<std::vector<std::string>> rows{{"n", "t_n", "vol_n", "C_n", "sandwich_ok"}};
        for (const VolRow& r : seq.rows)
            rows.push_back({std::to_string(r.n), sci(r.t), sci(r.vol), sci(r.c), to_cstr(r.sandwich_ok)});
        print_table(rows);
        std::cout << "nu = " << to_string(seq.nu, fmt.precision) << "; C_n decreasing: " << to_cstr(seq.c_decreasing)
                  << "; sandwich holds: " << to_cstr(seq.sandwich_all) << '\n';
    }
    return seq.c_decreasing && seq.sandwich_all ? kExitOk : kExitFail;
}

int cmd_kappa_auto(const std::string& path, const OutputFormat& fmt) {
    nlohmann::json doc;
    try {
        if (path == "-") {
            doc = nlohmann::json::parse(std::cin);
        } else {
            std::ifstream in(path);
            if (!in)
                throw ParseError(0, "cannot read '" + path + "'");
            doc = nlohmann::json::parse(in);
        }
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(e.byte, e.what());
    }
    DegreeProfile profile = profile_from_json(doc);
    for (const std::string& w : validate_profile(profile))
        std::cerr << "warning: " << w << '\n';
    int kappa = kappa_from_degrees(profile);
    std::string tolerance = "1e-9";
    if (fmt.kind == Format::json) {
        json j;
        j["kappa_sigma"] = kappa;
        j["dim"] = profile.dim;
        j["relative_tolerance"] = tolerance;
        std::cout << j.dump(2) << '\n';
    } else if (fmt.kind == Format::csv) {
        std::cout << "kappa_sigma,dim,relative_tolerance\n" << kappa << ',' << profile.dim << ',' << tolerance << '\n';
    } else {
        print_fields({{"kappa_sigma", std::to_string(kappa)},
                      {"dim", std::to_string(profile.dim)},
                      {"relative_tolerance", tolerance + "  (decimal degrees only; exact degrees compare exactly)"}});
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact section counts and numerical dimensions on a Calabi-Yau threefold"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string format_text = "table";
    OutputFormat fmt;
    app.add_option("--format", format_text, "Output format")
        ->check(CLI::IsMember({"table", "csv", "json"}))
        ->capture_default_str();
    app.add_option("--precision", fmt.precision, "Digits for display-only decimal values")
        ->check(CLI::Range(1, 200))
        ->capture_default_str();

    std::string m_text, ample_text = "1,1", bounds_text = "24,54", range_text = "10:50", out_path;
    unsigned jobs = 1;

    auto* h0 = app.add_subcommand("h0", "h0(X, floor(m D+) + A) for one m");
    h0->add_option("--m", m_text, "Multiple of D+ (nonnegative integer)")->required();
    h0->add_option("--ample", ample_text, "Ample class A as 'a1,a2' or a name")->capture_default_str();
    h0->add_option("--bounds", bounds_text, "Growth window c_lo,c_hi")->capture_default_str();

    auto* scan_cmd = app.add_subcommand("scan", "Scan m = 2^k and check c_lo m^(3/2) < h0 < c_hi m^(3/2)");
    scan_cmd->add_option("--m-exponents", range_text, "Exponent range lo:hi")->capture_default_str();
    scan_cmd->add_option("--ample", ample_text, "Ample class A")->capture_default_str();
    scan_cmd->add_option("--bounds", bounds_text, "Growth window c_lo,c_hi")->capture_default_str();
    scan_cmd->add_option("--out", out_path, "Write the scan as CSV to this path");
    scan_cmd->add_option("--jobs", jobs, "Worker threads")->check(CLI::Range(1u, 256u))->capture_default_str();

    std::string divisor_text;
    auto* classify_cmd = app.add_subcommand("classify", "Cone membership of a divisor class");
    classify_cmd->add_option("divisor", divisor_text, "'a1,a2' or H1, H2, Dplus, Dminus")->required();

    auto* normalize_cmd = app.add_subcommand("normalize", "Move a big class into the cone C by a power of phi*");
    normalize_cmd->add_option("divisor", divisor_text, "'a1,a2' or a name")->required();

    std::string inv_range = "10:50";
    auto* invariants = app.add_subcommand("invariants", "Numerical-dimension invariants of D+");
    invariants->add_option("--m-exponents", inv_range, "Exponent range for the slope fit")->capture_default_str();

    int dim = 3;
    std::string lambda_text = "17+12*sqrt2", mu_text = "17+12*sqrt2";
    auto* nu_cmd = app.add_subcommand("nu-vol", "dim / (1 + log mu1 / log lambda1)");
    nu_cmd->add_option("--dim", dim, "Dimension")->capture_default_str();
    nu_cmd->add_option("--lambda1", lambda_text, "First dynamical degree of phi")->capture_default_str();
    nu_cmd->add_option("--mu1", mu_text, "First dynamical degree of phi^-1")->capture_default_str();

    int n_max = 20;
    std::string vol_text = "320";
    auto* vol_cmd = app.add_subcommand("vol-seq", "Volume sequence t_n, vol(D+ + t_n A), C_n");
    vol_cmd->add_option("--n-max", n_max, "Last n")->capture_default_str();
    vol_cmd->add_option("--dim", dim, "Dimension")->capture_default_str();
    vol_cmd->add_option("--lambda1", lambda_text, "lambda_1(phi), Q(sqrt2) literal")->capture_default_str();
    vol_cmd->add_option("--mu1", mu_text, "lambda_1(phi^-1), Q(sqrt2) literal")->capture_default_str();
    vol_cmd->add_option("--vol-a", vol_text, "vol(A)")->capture_default_str();

    std::string profile_path;
    auto* kappa_cmd = app.add_subcommand("kappa-auto", "Numerical dimension from dynamical degrees of an automorphism");
    kappa_cmd->add_option("profile", profile_path, "JSON profile path, or - for stdin")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitParse;
    }
    fmt.kind = format_text == "csv" ? Format::csv : format_text == "json" ? Format::json : Format::table;

    try {
        if (h0->parsed())
            return cmd_h0(m_text, ample_text, bounds_text, fmt);
        if (scan_cmd->parsed())
            return cmd_scan(range_text, ample_text, bounds_text, out_path, jobs, fmt);
        if (classify_cmd->parsed())
            return cmd_classify(divisor_text, fmt);
        if (normalize_cmd->parsed())
            return cmd_normalize(divisor_text, fmt);
        if (invariants->parsed())
            return cmd_invariants(inv_range, fmt);
        if (nu_cmd->parsed())
            return cmd_nu_vol(dim, lambda_text, mu_text, fmt);
        if (vol_cmd->parsed())
            return cmd_vol_seq(n_max, dim, lambda_text, mu_text, vol_text, fmt);
        if (kappa_cmd->parsed())
            return cmd_kappa_auto(profile_path, fmt);
    } catch (const ParseError& e) {
        std::cerr << "numdim: " << e.what() << '\n';
        return kExitParse;
    } catch (const Error& e) {
        std::cerr << "numdim: " << e.what() << '\n';
        return e.is_internal() ? kExitFail : kExitDomain;
    } catch (const std::exception& e) {
        std::cerr << "numdim: " << e.what() << '\n';
        return kExitFail;
    }
    return kExitFail;
}
