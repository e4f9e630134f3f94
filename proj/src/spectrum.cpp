#include "diracsym/spectrum.hpp"

#include "diracsym/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <map>
#include <sstream>
#include <thread>

namespace diracsym {

namespace {

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.15e", x);
    return buf;
}

std::string label(double x) {
    // kappa and m_j are integers or half-integers.
    char buf[32];
    if (x == std::round(x)) std::snprintf(buf, sizeof buf, "%d", int(std::lround(x)));
    else std::snprintf(buf, sizeof buf, "%.1f", x);
    return buf;
}

template <class T>
std::string opt(const std::optional<T>& v, std::string (*f)(double)) {
    return v ? f(*v) : std::string{};
}

// Fills partner columns: for rows i, j with key(i) partner of key(j) and equal nodes.
void pair_rows(std::vector<SpectrumRow>& rows, const std::vector<std::string>& self,
               const std::vector<std::string>& other, const std::vector<double>& other_kappa) {
    std::map<std::pair<std::string, int>, std::size_t> index;
    for (std::size_t i = 0; i < rows.size(); ++i) index[{self[i], rows[i].nodes}] = i;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto it = index.find({other[i], rows[i].nodes});
        if (it == index.end()) continue;
        rows[i].partner_kappa = other_kappa[i];
        rows[i].splitting = rows[it->second].energy - rows[i].energy;
    }
}

} // namespace

std::string to_csv(const SpectrumTable& t) {
    std::ostringstream os;
    os << "# diracsym spectrum schema " << kSpectrumSchemaVersion << "\n";
    os << "dimension,branch,kappa,m_j,nodes,energy,partner_kappa,splitting\n";
    for (const auto& r : t.rows) {
        os << r.dimension << ',' << r.branch << ',' << label(r.kappa) << ',' << opt(r.m_j, label)
           << ',' << r.nodes << ',' << num(r.energy) << ',' << opt(r.partner_kappa, label) << ','
           << opt(r.splitting, num) << "\n";
    }
    return os.str();
}

void to_json(nlohmann::json& j, const SpectrumRow& r) {
    j = nlohmann::json{{"dimension", r.dimension}, {"branch", r.branch}, {"kappa", r.kappa},
                       {"nodes", r.nodes},         {"energy", r.energy}};
    j["m_j"] = r.m_j ? nlohmann::json(*r.m_j) : nlohmann::json(nullptr);
    j["partner_kappa"] = r.partner_kappa ? nlohmann::json(*r.partner_kappa) : nlohmann::json(nullptr);
    j["splitting"] = r.splitting ? nlohmann::json(*r.splitting) : nlohmann::json(nullptr);
}

void to_json(nlohmann::json& j, const SpectrumTable& t) {
    j = nlohmann::json{{"schema", kSpectrumSchemaVersion}, {"metadata", t.metadata}, {"rows", t.rows}};
}

int partner_kappa(Branch symmetry, int kappa) {
    return symmetry == Branch::spin ? -kappa - 1 : -kappa + 1;
}

double partner_m_j(Relation relation, int chirality, double m_j) {
    // The oracle index is (kappa + 1/2)^2 for plus, (kappa - 1/2)^2 for minus.
    const bool upper = relation != Relation::minus;
    const bool plus_chirality = chirality > 0;
    return upper == plus_chirality ? 1.0 - m_j : -1.0 - m_j;
}

void parallel_for(int n, int threads, const std::function<void(int)>& job) {
    std::vector<std::exception_ptr> errors(n);
    auto guarded = [&](int i) {
        try {
            job(i);
        } catch (...) {
            errors[i] = std::current_exception();
        }
    };
    const int workers = std::max(1, std::min(threads, n));
    if (workers == 1) {
        for (int i = 0; i < n; ++i) guarded(i);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&, w] {
                for (int i = w; i < n; i += workers) guarded(i);
            });
        for (auto& t : pool) t.join();
    }
    // Lowest index first, so the reported failure does not depend on scheduling.
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

std::vector<SpectrumRow> spectrum_3d(const SymmetryScenario& s, const std::vector<int>& kappas,
                                     const EnergyWindow& window, const RadialGrid& grid,
                                     const ShootingOptions& opt, int threads) {
    std::vector<std::vector<RadialSolution>> per(kappas.size());
    parallel_for(int(kappas.size()), threads, [&](int i) {
        try {
            per[i] = solve_bound_states(s, kappas[i], window, grid, opt);
        } catch (const NoStateFound&) {
            // an empty channel is a result; only an empty spectrum is an error
        }
    });
    const Branch sym = s.symmetry();
    std::vector<SpectrumRow> rows;
    std::vector<std::string> self, other;
    std::vector<double> other_kappa;
    for (std::size_t i = 0; i < kappas.size(); ++i) {
        const int pk = partner_kappa(sym, kappas[i]);
        for (const auto& sol : per[i]) {
            SpectrumRow r;
            r.dimension = "3d";
            r.branch = to_string(s.branch);
            r.kappa = kappas[i];
            r.nodes = sym == Branch::spin ? sol.nodes : sol.nodes_f;
            r.energy = sol.energy;
            rows.push_back(r);
            self.push_back(std::to_string(kappas[i]));
            other.push_back(std::to_string(pk));
            other_kappa.push_back(pk);
        }
    }
    if (rows.empty()) throw NoStateFound("no 3D bound state in any kappa channel of the window");
    pair_rows(rows, self, other, other_kappa);
    return rows;
}

std::vector<SpectrumRow> spectrum_2d(const Planar2DProblem& base, const std::vector<double>& m_js,
                                     const std::vector<int>& chiralities,
                                     const EnergyWindow& window, const ShootingOptions& opt,
                                     int threads) {
    struct Job {
        double m_j;
        int chirality;
    };
    std::vector<Job> jobs;
    for (int c : chiralities)
        for (double m : m_js) jobs.push_back({m, c});
    std::vector<std::vector<State2D>> per(jobs.size());
    parallel_for(int(jobs.size()), threads, [&](int i) {
        Planar2DProblem p = base;
        p.m_j = jobs[i].m_j;
        p.chirality = jobs[i].chirality;
        try {
            per[i] = solve_2d_radial(p, window, opt);
        } catch (const NoStateFound&) {
        }
    });
    std::vector<SpectrumRow> rows;
    std::vector<std::string> self, other;
    std::vector<double> other_kappa;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        const double pm = partner_m_j(base.relation, jobs[i].chirality, jobs[i].m_j);
        const std::string chi = std::to_string(jobs[i].chirality) + "/";
        for (const auto& st : per[i]) {
            SpectrumRow r;
            r.dimension = "2d";
            r.branch = to_string(base.relation);
            r.kappa = st.radial.kappa;
            r.m_j = st.m_j;
            r.nodes = st.nodes;
            r.energy = st.energy;
            rows.push_back(r);
            self.push_back(chi + label(jobs[i].m_j));
            // m_j = 1/2 can be its own partner; leave its columns empty.
            other.push_back(pm == jobs[i].m_j ? std::string("none") : chi + label(pm));
            other_kappa.push_back(jobs[i].chirality > 0 ? -pm : pm);
        }
    }
    if (rows.empty()) throw NoStateFound("no 2D bound state in any (m_j, chirality) channel of the window");
    pair_rows(rows, self, other, other_kappa);
    return rows;
}

std::vector<SpectrumRow> spectrum_1d(const Axial1DProblem& p, const EnergyWindow& window) {
    const auto states = solve_1d(p, window);
    std::vector<SpectrumRow> rows;
    std::vector<std::string> self, other;
    std::vector<double> other_kappa;
    for (const auto& st : states) {
        SpectrumRow r;
        r.dimension = "1d";
        r.branch = to_string(p.relation);
        r.kappa = st.channel;
        r.nodes = st.nodes;
        r.energy = st.energy;
        rows.push_back(r);
        self.push_back(std::to_string(st.channel));
        other.push_back(std::to_string(-st.channel));
        other_kappa.push_back(-st.channel);
    }
    pair_rows(rows, self, other, other_kappa);
    return rows;
}

} // namespace diracsym
