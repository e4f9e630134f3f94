#pragma once

#include "diracsym/lowdim.hpp"
#include "diracsym/potential.hpp"
#include "diracsym/radial.hpp"

#include "json.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace diracsym {

enum class Command { verify_algebra, spectrum, doublets, scan_breaking };
std::string to_string(Command c);
Command command_from_string(const std::string& s);

/// Everything a run needs. Serialized as nested JSON; every field is
/// optional in the file and falls back to the defaults below.
struct RunConfig {
    Command command = Command::spectrum;
    std::string dimension = "3d"; // 3d, 2d or 1d
    std::uint64_t seed = 42;
    int threads = 1;
    std::string out_dir = "out";

    struct Radial {
        std::string branch = "spin"; // spin, pseudospin or broken
        PotentialProfile potential = PotentialProfile::woods_saxon(-60.0, 4.0, 0.6);
        double c = -2.0;
        /// broken and scan-breaking: the constant branch of `breaks` becomes
        /// c + breaking * breaking_profile.
        double breaking = 0.1;
        /// Same shape as the well at 1% depth. With the full well as the profile the
        /// levels sink into the lower continuum between amplitudes 0.05 and 0.2 and
        /// no node label survives the scan.
        PotentialProfile breaking_profile = PotentialProfile::woods_saxon(-0.6, 4.0, 0.6);
        std::string breaks = "spin";
        std::vector<int> kappas{1, -2, 2, -3};
        EnergyWindow window{-1.999, -0.001};
        /// Finer than the library default: doublets at 1e-8 need N >= 16000 here.
        RadialGrid grid{1e-6, 20.0, 24000};
    } radial;

    struct Axial {
        std::string relation = "plus";
        PotentialProfile potential = PotentialProfile::square_well(-5.0, 1.0);
        double c = 0.0;
        double breaking = 0.1;
        double length = 10.0;
        /// Well edges on mesh points; halving from here moves every level by < 1e-7.
        int n = 63999;
        EnergyWindow window{0.001, 2.0};
    } axial;

    struct Planar {
        std::string relation = "plus";
        PotentialProfile potential = PotentialProfile::square_well(-4.0, 2.0);
        double c = -1.0;
        double breaking = 0.1;
        std::vector<double> m_j{0.5, -0.5, 1.5, -1.5, 2.5, -2.5};
        std::vector<int> chirality{1, -1};
        EnergyWindow window{-0.999, 0.999};
        RadialGrid grid{1e-6, 20.0, 16000};
    } planar;

    struct Tolerances {
        double energy = 1e-12;  // root refinement
        int scan_points = 400;
        double entry = 1e-12;   // matrix-entry residuals
        double dispersion = 1e-10;
        double doublet = 1e-8;
        double breaking = 1e-3; // minimum splitting reported as broken
    } tolerances;

    struct Sweep {
        int count = 100;
        double range = 2.0;
    } sweep;

    std::vector<double> amplitudes{0.05, 0.1, 0.2};
};

void to_json(nlohmann::json& j, const RunConfig& c);
/// Strict: unknown keys and wrong types raise ConfigError naming the field path.
void from_json(const nlohmann::json& j, RunConfig& c);

RunConfig load_config(const std::string& path);
RunConfig parse_config(const std::string& text);
std::string dump_config(const RunConfig& c);

/// ConfigError listing the offending field path and what would be accepted.
void validate(const RunConfig& c);

SymmetryScenario make_scenario(const RunConfig& c);
SymmetryScenario make_scenario(const RunConfig& c, double amplitude);
Axial1DProblem make_axial(const RunConfig& c);
Planar2DProblem make_planar(const RunConfig& c, double amplitude);
Planar2DProblem make_planar(const RunConfig& c);

struct RunResult {
    int exit_code = 0; // 0 pass, 1 solver or check failure
    std::vector<std::string> files;
    nlohmann::json summary;
};

/// Executes the command and writes its artifacts under c.out_dir with a
/// single writer once all channels have finished. Solver errors propagate.
RunResult run(const RunConfig& c);

} // namespace diracsym
