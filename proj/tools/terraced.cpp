// terraced: command-line front end.
// Exit codes: 0 ok, 1 an --expect verdict came out "no", 2 configuration error.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "terraced/report.hpp"
#include "terraced/verify.hpp"

using namespace terraced;

namespace {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SequenceOptions {
    std::string family;
    double s = 1.0;
    double t = 0.0;
    double scale = 1.0;
    bool alternating = false;
    std::string values_file;
    std::string atoms;
};

struct Config {
    SequenceOptions seq;
    std::vector<std::size_t> schedule = kDefaultSchedule;
    std::size_t k_max = 20;
    std::vector<double> q_list{2.0};
    std::vector<double> eps;
    std::size_t a = 0, b = 0;
    std::vector<std::size_t> n_list{0};
    std::size_t n_max = 8;
    std::size_t N = 8;
    std::size_t cap = 4096;
    std::size_t b_cap = 1024;
    std::string matrix = "rhaly";
    std::string format = "json";
    std::string out;
    std::uint64_t seed = 7;
    std::size_t count = 100;
    std::vector<std::string> expect;
};

// "1.5", "-2j", "1-0.5j", "0.3+1e-3j"
complex parse_complex(const std::string& text)
{
    std::string s;
    for (char ch : text)
        if (ch != ' ') s += ch;
    if (s.empty()) throw ConfigError("empty complex number");
    try {
        if (s.back() != 'j' && s.back() != 'i') {
            std::size_t used = 0;
            const double re = std::stod(s, &used);
            if (used != s.size()) throw ConfigError("bad number '" + text + "'");
            return {re, 0.0};
        }
        s.pop_back();
        // split at the last sign that is not an exponent sign
        std::size_t cut = std::string::npos;
        for (std::size_t i = s.size(); i-- > 1;)
            if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
                cut = i;
                break;
            }
        const std::string re_part = cut == std::string::npos ? "0" : s.substr(0, cut);
        std::string im_part = cut == std::string::npos ? s : s.substr(cut);
        if (im_part == "+" || im_part == "-" || im_part.empty()) im_part += "1";
        std::size_t u1 = 0, u2 = 0;
        const double re = std::stod(re_part, &u1), im = std::stod(im_part, &u2);
        if (u1 != re_part.size() || u2 != im_part.size()) throw ConfigError("bad number '" + text + "'");
        return {re, im};
    } catch (const std::logic_error&) {
        throw ConfigError("bad number '" + text + "'");
    }
}

// "w@t,w@t,..."
std::vector<Atom> parse_atoms(const std::string& text)
{
    std::vector<Atom> atoms;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        const auto at = item.find('@');
        if (at == std::string::npos) throw ConfigError("atom '" + item + "' must read WEIGHT@NODE");
        const complex w = parse_complex(item.substr(0, at));
        const complex t = parse_complex(item.substr(at + 1));
        if (t.imag() != 0.0) throw ConfigError("atom node must be real");
        atoms.push_back({w, t.real()});
    }
    if (atoms.empty()) throw ConfigError("--atoms needs at least one WEIGHT@NODE");
    return atoms;
}

SequenceSpec make_sequence(const SequenceOptions& o)
{
    std::string family = o.family;
    if (family.empty()) family = o.values_file.empty() ? "cesaro" : "custom";
    if (!o.values_file.empty() && family != "custom")
        throw ConfigError("--values-file goes with --family custom");
    if (family == "cesaro") return SequenceSpec::cesaro();
    if (family == "power") return SequenceSpec::power(o.s, o.scale, o.alternating);
    if (family == "logpower") return SequenceSpec::log_power(o.s, o.t, o.scale, o.alternating);
    if (family == "moments") {
        if (o.atoms.empty()) throw ConfigError("--family moments needs --atoms");
        return SequenceSpec::moments(parse_atoms(o.atoms));
    }
    if (family == "custom") {
        if (o.values_file.empty()) throw ConfigError("--family custom needs --values-file");
        return load_sequence(o.values_file);
    }
    throw ConfigError("unknown family '" + family + "'");
}

void emit(const Config& cfg, const std::string& text)
{
    if (cfg.out.empty()) {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream f(cfg.out);
    if (!f) throw ConfigError("cannot write " + cfg.out);
    f << text;
}

Json envelope(const std::string& command, const SequenceSpec* spec)
{
    Json j;
    j["schema"] = kSchema;
    j["command"] = command;
    if (spec) j["sequence"] = to_json(*spec);
    return j;
}

NormOptions norm_options(const Config& cfg)
{
    NormOptions opt;
    opt.k_max = cfg.k_max;
    return opt;
}

void require_json(const Config& cfg, const char* command)
{
    if (cfg.format != "json") throw ConfigError(std::string(command) + " only writes json");
}

// 1 when any expected property is certified false
int check_expectations(const Config& cfg, const std::map<std::string, Verdict>& verdicts)
{
    int code = 0;
    for (const auto& name : cfg.expect) {
        const auto it = verdicts.find(name);
        if (it == verdicts.end()) throw ConfigError("cannot check --expect " + name + " here");
        std::fprintf(stderr, "expect %s: %s\n", name.c_str(), std::string(to_string(it->second)).c_str());
        if (it->second == Verdict::no) code = 1;
    }
    return code;
}

std::string schatten_key(double q) { return "schatten:" + format_double(q); }

int run_analyze(const Config& cfg)
{
    const auto spec = make_sequence(cfg.seq);
    const auto crit = criteria_report(spec, cfg.q_list, norm_options(cfg));
    std::map<std::string, Verdict> verdicts{{"bounded", crit.norm.bounded}, {"compact", crit.essential.compact}};
    for (const auto& [q, r] : crit.schatten) verdicts[schatten_key(q)] = r.verdict;
    if (cfg.format == "csv") {
        std::ostringstream os;
        write_sigma_csv(os, crit.profile);
        emit(cfg, os.str());
    } else {
        const std::size_t n_max = std::min(cfg.n_max, cfg.schedule.front());
        auto j = envelope("analyze", &spec);
        j["criteria"] = to_json(crit);
        j["spectral"] = to_json(spectral_report(spec, n_max, cfg.q_list, cfg.schedule));
        emit(cfg, dump_json(j));
    }
    return check_expectations(cfg, verdicts);
}

int run_sigma(const Config& cfg)
{
    const auto spec = make_sequence(cfg.seq);
    const auto p = sigma_profile(spec, cfg.k_max);
    if (cfg.format == "csv") {
        std::ostringstream os;
        write_sigma_csv(os, p);
        emit(cfg, os.str());
    } else {
        auto j = envelope("sigma", &spec);
        j["sigma_profile"] = to_json(p);
        emit(cfg, dump_json(j));
    }
    return 0;
}

int run_jn(const Config& cfg)
{
    const auto spec = make_sequence(cfg.seq);
    const auto rs = J_n_brackets(spec, cfg.n_list);
    if (cfg.format == "csv") {
        std::ostringstream os;
        os << "n,lo,hi,argmax_m,exact\n";
        for (std::size_t i = 0; i < rs.size(); ++i)
            os << cfg.n_list[i] << ',' << format_double(rs[i].value.lo) << ',' << format_double(rs[i].value.hi) << ','
               << rs[i].argmax_m << ',' << (rs[i].exact ? "true" : "false") << '\n';
        emit(cfg, os.str());
    } else {
        auto j = envelope("jn", &spec);
        Json list = Json::array();
        for (std::size_t i = 0; i < rs.size(); ++i) {
            Json e{{"n", cfg.n_list[i]}};
            e.update(to_json(rs[i]));
            list.push_back(e);
        }
        j["J_n"] = list;
        emit(cfg, dump_json(j));
    }
    return 0;
}

int run_interval(const Config& cfg)
{
    if (cfg.a > cfg.b) throw ConfigError("--a must not exceed --b");
    const auto spec = make_sequence(cfg.seq);
    const auto r = interval_report(spec, {cfg.a, cfg.b});
    if (cfg.format == "csv") {
        emit(cfg, "a,b,mu,L,K,J,argmin_c\n" + std::to_string(cfg.a) + ',' + std::to_string(cfg.b) + ','
                      + format_double(r.mu) + ',' + format_double(r.L) + ',' + format_double(r.K) + ','
                      + format_double(r.J) + ',' + std::to_string(r.argmin_c) + '\n');
    } else {
        auto j = envelope("interval", &spec);
        j["interval"] = to_json(r);
        emit(cfg, dump_json(j));
    }
    return 0;
}

int run_epsl(const Config& cfg)
{
    if (cfg.eps.empty()) throw ConfigError("epsl needs --eps");
    const auto spec = make_sequence(cfg.seq);
    std::vector<std::pair<EpsLSequence, std::vector<ApproxBound>>> rows;
    for (double e : cfg.eps) {
        auto seq = build_eps_l(spec, e, cfg.cap);
        auto bounds = approx_number_bounds(seq);
        rows.emplace_back(std::move(seq), std::move(bounds));
    }
    if (cfg.format == "csv") {
        std::ostringstream os;
        os << "epsilon,status,index,kind,value\n";
        for (const auto& [seq, bounds] : rows)
            for (const auto& b : bounds)
                os << format_double(seq.epsilon) << ',' << seq.status_string() << ',' << b.index << ','
                   << (b.kind == ApproxBound::upper ? "upper" : "lower") << ',' << format_double(b.value) << '\n';
        emit(cfg, os.str());
        return 0;
    }
    auto j = envelope("epsl", &spec);
    Json list = Json::array();
    for (const auto& [seq, bounds] : rows) {
        Json e = to_json(seq);
        e["approx_number_bounds"] = to_json(bounds);
        list.push_back(e);
    }
    j["sequences"] = list;
    const std::vector<std::size_t> grid{0, 16, 256};
    j["script_L"] = to_json(script_L_limit(spec, grid, std::max<std::size_t>(cfg.b_cap, 257)));
    emit(cfg, dump_json(j));
    return 0;
}

int run_spectral(const Config& cfg)
{
    const auto spec = make_sequence(cfg.seq);
    const std::size_t n_max = std::min(cfg.n_max, cfg.schedule.front());
    const auto r = spectral_report(spec, n_max, cfg.q_list, cfg.schedule);
    if (cfg.format == "csv") {
        std::ostringstream os;
        write_singular_csv(os, r.sections);
        emit(cfg, os.str());
    } else {
        auto j = envelope("spectral", &spec);
        j["spectral"] = to_json(r);
        emit(cfg, dump_json(j));
    }
    return 0;
}

int run_hadamard(const Config& cfg)
{
    const auto c = make_sequence(cfg.seq);
    const auto r = main4_report(c, cfg.q_list, cfg.k_max);
    std::map<std::string, Verdict> verdicts{{"bounded", r.bounded}, {"compact", r.compact}};
    for (const auto& [q, v] : r.schatten) verdicts[schatten_key(q)] = v;
    if (cfg.format == "csv") {
        std::ostringstream os;
        write_blocks_csv(os, r);
        emit(cfg, os.str());
    } else {
        auto j = envelope("hadamard", &c);
        j["multiplier"] = to_json(r);
        emit(cfg, dump_json(j));
    }
    return check_expectations(cfg, verdicts);
}

int run_dump(const Config& cfg)
{
    if (cfg.N == 0) throw ConfigError("--N must be at least 1");
    const auto spec = make_sequence(cfg.seq);
    DenseMatrix m;
    if (cfg.matrix == "rhaly")
        m = truncate_rhaly(spec, cfg.N).matrix;
    else if (cfg.matrix == "gram")
        m = gram_lshape(spec, cfg.N);
    else if (cfg.matrix == "tc")
        m = build_Tc(spec, cfg.N);
    else
        throw ConfigError("unknown --matrix '" + cfg.matrix + "' (rhaly, gram, tc)");
    if (cfg.format == "csv") {
        std::ostringstream os;
        write_csv(os, m);
        emit(cfg, os.str());
        return 0;
    }
    auto j = envelope("dump", &spec);
    j["matrix"] = cfg.matrix;
    j["N"] = cfg.N;
    Json re = Json::array(), im = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json r1 = Json::array(), r2 = Json::array();
        for (std::size_t k = 0; k < m.cols(); ++k) {
            r1.push_back(number(m(i, k).real()));
            r2.push_back(number(m(i, k).imag()));
        }
        re.push_back(r1);
        im.push_back(r2);
    }
    j["real"] = re;
    j["imag"] = im;
    emit(cfg, dump_json(j));
    return 0;
}

int run_verify(const Config& cfg)
{
    require_json(cfg, "verify");
    const auto r = terraced::run_verify(cfg.seed, cfg.count);
    auto j = envelope("verify", nullptr);
    j["verify"] = to_json(r);
    emit(cfg, dump_json(j));
    for (const auto& s : r.suites)
        std::fprintf(stderr, "%-20s %6zu passed %4zu failed\n", s.name.c_str(), s.passed, s.failed);
    return r.ok() ? 0 : 1;
}

void add_sequence_options(CLI::App* app, Config& cfg)
{
    app->add_option("--family", cfg.seq.family, "cesaro | power | logpower | moments | custom")
        ->check(CLI::IsMember({"cesaro", "power", "logpower", "moments", "custom"}));
    app->add_option("--s", cfg.seq.s, "power exponent");
    app->add_option("--t", cfg.seq.t, "log exponent (logpower)");
    app->add_option("--scale", cfg.seq.scale, "overall factor");
    app->add_flag("--alternating", cfg.seq.alternating, "multiply by (-1)^k");
    app->add_option("--values-file", cfg.seq.values_file, "sequence file (#terraced-seq v1)");
    app->add_option("--atoms", cfg.seq.atoms, "moment atoms WEIGHT@NODE,...");
}

void add_output_options(CLI::App* app, Config& cfg)
{
    app->add_option("--format", cfg.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
    app->add_option("--out", cfg.out, "output path (default stdout)");
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Rhaly operator analysis"};
    app.require_subcommand(1);
    Config cfg;

    const auto q_opt = [&](CLI::App* s) {
        s->add_option("--q", cfg.q_list, "Schatten exponents in (1, inf)")->delimiter(',');
    };
    const auto sched_opt = [&](CLI::App* s) {
        s->add_option("--N-schedule", cfg.schedule, "increasing truncation sizes")->delimiter(',');
        s->add_option("--nmax", cfg.n_max, "number of approximation numbers reported");
    };
    const auto expect_opt = [&](CLI::App* s) {
        s->add_option("--expect", cfg.expect, "bounded | compact | schatten:Q; exit 1 if certified false")
            ->delimiter(',');
    };

    auto* analyze = app.add_subcommand("analyze", "criteria and spectral reports");
    add_sequence_options(analyze, cfg);
    add_output_options(analyze, cfg);
    analyze->add_option("--kmax", cfg.k_max);
    q_opt(analyze);
    sched_opt(analyze);
    expect_opt(analyze);

    auto* sigma = app.add_subcommand("sigma", "dyadic sigma profile");
    add_sequence_options(sigma, cfg);
    add_output_options(sigma, cfg);
    sigma->add_option("--kmax", cfg.k_max);

    auto* jn = app.add_subcommand("jn", "J_n brackets");
    add_sequence_options(jn, cfg);
    add_output_options(jn, cfg);
    jn->add_option("--n", cfg.n_list, "indices n")->delimiter(',');

    auto* interval = app.add_subcommand("interval", "mu, L, K, J on [a, b]");
    add_sequence_options(interval, cfg);
    add_output_options(interval, cfg);
    interval->add_option("--a", cfg.a)->required();
    interval->add_option("--b", cfg.b)->required();

    auto* epsl = app.add_subcommand("epsl", "(eps, L)-sequences and approximation-number bounds");
    add_sequence_options(epsl, cfg);
    add_output_options(epsl, cfg);
    epsl->add_option("--eps", cfg.eps, "thresholds")->delimiter(',')->required();
    epsl->add_option("--cap", cfg.cap, "scan limit");
    epsl->add_option("--bcap", cfg.b_cap, "right end for the sampled L([n, b])");

    auto* spectral = app.add_subcommand("spectral", "singular values of truncations");
    add_sequence_options(spectral, cfg);
    add_output_options(spectral, cfg);
    q_opt(spectral);
    sched_opt(spectral);

    auto* hadamard = app.add_subcommand("hadamard", "Hadamard multiplier T_c");
    add_sequence_options(hadamard, cfg);
    add_output_options(hadamard, cfg);
    hadamard->add_option("--kmax", cfg.k_max);
    q_opt(hadamard);
    expect_opt(hadamard);

    auto* dump = app.add_subcommand("dump", "write a truncated matrix");
    add_sequence_options(dump, cfg);
    add_output_options(dump, cfg);
    dump->add_option("--matrix", cfg.matrix, "rhaly | gram | tc");
    dump->add_option("--N", cfg.N, "section size");

    auto* verify = app.add_subcommand("verify", "invariant suites on a seeded random corpus");
    add_output_options(verify, cfg);
    verify->add_option("--seed", cfg.seed);
    verify->add_option("--count", cfg.count, "corpus size");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        for (double q : cfg.q_list)
            if (!(q > 1.0) || !std::isfinite(q)) throw ConfigError("--q values must lie in (1, inf)");
        for (std::size_t i = 0; i < cfg.schedule.size(); ++i)
            if (cfg.schedule[i] == 0 || (i && cfg.schedule[i] <= cfg.schedule[i - 1]))
                throw ConfigError("--N-schedule must be strictly increasing and positive");
        if (cfg.schedule.empty()) throw ConfigError("--N-schedule is empty");

        const auto* sub = app.get_subcommands().front();
        const std::string name = sub->get_name();
        if (name == "analyze") return run_analyze(cfg);
        if (name == "sigma") return run_sigma(cfg);
        if (name == "jn") return run_jn(cfg);
        if (name == "interval") return run_interval(cfg);
        if (name == "epsl") return run_epsl(cfg);
        if (name == "spectral") return run_spectral(cfg);
        if (name == "hadamard") return run_hadamard(cfg);
        if (name == "dump") return run_dump(cfg);
        return run_verify(cfg);
    } catch (const std::exception& e) {
        // bad files, out-of-domain parameters and the like all land here
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
