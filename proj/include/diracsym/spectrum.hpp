#pragma once

#include "diracsym/lowdim.hpp"
#include "diracsym/radial.hpp"

#include "json.hpp"

#include <optional>
#include <string>
#include <vector>

namespace diracsym {

inline constexpr int kSpectrumSchemaVersion = 1;

/// One CSV row. For dimension "1d" the kappa column carries the Sigma_3 channel.
struct SpectrumRow {
    std::string dimension; // "3d", "2d" or "1d"
    std::string branch;    // spin / pseudospin / broken, or the lowdim relation
    double kappa = 0.0;
    std::optional<double> m_j;
    int nodes = 0;
    double energy = 0.0;
    std::optional<double> partner_kappa;
    std::optional<double> splitting; // partner energy minus this energy
};

struct SpectrumTable {
    std::vector<SpectrumRow> rows;
    nlohmann::json metadata = nlohmann::json::object();
};

/// Header comment with the schema version, then the column line.
std::string to_csv(const SpectrumTable& t);
void to_json(nlohmann::json& j, const SpectrumRow& r);
void to_json(nlohmann::json& j, const SpectrumTable& t);

/// kappa <-> -kappa - 1 (spin) or -kappa + 1 (pseudospin).
int partner_kappa(Branch symmetry, int kappa);

/// m_j of the planar channel with the same orbital index.
double partner_m_j(Relation relation, int chirality, double m_j);

/// Solves every kappa (in parallel when threads > 1) and fills partner
/// columns for pairs present in the list. Partners are matched by the node
/// count of the Schrodinger-like component.
std::vector<SpectrumRow> spectrum_3d(const SymmetryScenario& s, const std::vector<int>& kappas,
                                     const EnergyWindow& window, const RadialGrid& grid,
                                     const ShootingOptions& opt = {}, int threads = 1);

std::vector<SpectrumRow> spectrum_2d(const Planar2DProblem& base, const std::vector<double>& m_js,
                                     const std::vector<int>& chiralities,
                                     const EnergyWindow& window, const ShootingOptions& opt = {},
                                     int threads = 1);

/// Both Sigma_3 channels; each row's partner is the other channel.
std::vector<SpectrumRow> spectrum_1d(const Axial1DProblem& p, const EnergyWindow& window);

/// Runs jobs[0..n) on up to `threads` workers; each job writes only its own slot.
void parallel_for(int n, int threads, const std::function<void(int)>& job);

} // namespace diracsym
