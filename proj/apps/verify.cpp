#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>

#include "CLI11.hpp"
#include "twist/run.hpp"

int main(int argc, char** argv) {
    tw::RunConfig cfg;
    std::string suite = "all", out, md;
    bool quiet = false;
    CLI::App app{"exact verification of the twisted Sklyanin algebra, its point and line schemes and module incidences"};
    app.add_option("suite", suite, "identities, modules, schemes, incidence, sequences or all")
        ->check(CLI::IsMember({"identities", "modules", "schemes", "incidence", "sequences", "all"}));
    app.add_option("--mode", cfg.mode, "full, symbolic or specialized")->envname("TWIST_MODE");
    app.add_option("--primes,--prime", cfg.primes, "comma separated primes")->delimiter(',')->envname("TWIST_PRIMES");
    app.add_option("--seed", cfg.seed, "seed for parameters and sampling")->envname("TWIST_SEED");
    app.add_option("--cutoff", cfg.cutoff, "degree cutoff for graded components")->envname("TWIST_CUTOFF");
    app.add_option("--jobs", cfg.jobs, "threads for line enumeration")->envname("TWIST_JOBS");
    app.add_option("--out", out, "JSON report path, stdout when empty")->envname("TWIST_OUT");
    app.add_option("--markdown", md, "Markdown report path")->envname("TWIST_MARKDOWN");
    app.add_flag("--dump-modules", cfg.dump_modules, "include module action matrices")->envname("TWIST_DUMP_MODULES");
    app.add_flag("--quiet", quiet, "no progress on stderr")->envname("TWIST_QUIET");
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    cfg.suites = {suite};
    std::ofstream outf;
    if (!out.empty()) {
        outf.open(out, std::ios::binary);
        if (!outf) {
            std::cerr << "config error: cannot write " << out << "\n";
            return 2;
        }
    }
    tw::RunReport rep;
    auto t0 = std::chrono::steady_clock::now();
    auto log = [&](const std::string& s) {
        if (quiet) return;
        double t = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::cerr << "[" << std::fixed << std::setprecision(1) << t << "s] " << s << "\n";
    };
    try {
        rep = tw::run(cfg, log);
    } catch (const tw::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    std::string js = rep.json().dump(2) + "\n";
    if (out.empty()) std::cout << js;
    else outf << js;
    if (!md.empty()) {
        std::ofstream f(md, std::ios::binary);
        f << rep.markdown();
    }
    log(rep.pass() ? "all suites passed" : "some checks failed");
    return rep.pass() ? 0 : 1;
}
