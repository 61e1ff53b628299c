#include "qprob/io.hpp"

#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

namespace qprob {

GridState1D load_grid_state_1d(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open wavefunction file: " + path);

    std::optional<double> x0, dx;
    std::optional<std::size_t> n;
    std::vector<cplx> psi;
    std::size_t next_index = 0;
    std::string line;
    std::size_t line_no = 0;

    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream row(line);

        std::string head;
        row >> head;
        const auto fail = [&](const std::string& what) -> Error {
            return Error(path + ":" + std::to_string(line_no) + ": " + what);
        };
        if (head == "x0" || head == "dx" || head == "n") {
            double v = 0.0;
            if (!(row >> v)) throw fail("malformed header value for '" + head + "'");
            if (head == "x0") x0 = v;
            else if (head == "dx") dx = v;
            else n = std::size_t(v);
            continue;
        }
        if (!x0 || !dx || !n) {
            throw fail("data row before complete header (x0, dx, n required)");
        }
        std::size_t idx = 0;
        double re = 0.0, im = 0.0;
        std::istringstream data(line);
        if (!(data >> idx >> re >> im)) throw fail("malformed data row (want: index re im)");
        if (idx != next_index) {
            throw fail("row index " + std::to_string(idx) + " out of order (expected " +
                       std::to_string(next_index) + ")");
        }
        if (idx >= *n) throw fail("row index beyond declared n");
        psi.emplace_back(re, im);
        ++next_index;
    }

    if (!x0 || !dx || !n) throw Error(path + ": missing header line(s) x0/dx/n");
    if (psi.size() != *n) {
        throw Error(path + ": expected " + std::to_string(*n) + " data rows, found " +
                    std::to_string(psi.size()));
    }
    return GridState1D(UniformGrid(*x0, *dx, *n), std::move(psi));
}

void save_grid_state_1d(const std::string& path, const GridState1D& s) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write wavefunction file: " + path);
    char buf[128];
    std::snprintf(buf, sizeof buf, "x0 %.17g\ndx %.17g\nn %zu\n", s.grid().x0, s.grid().dx,
                  s.grid().n);
    out << buf;
    for (std::size_t j = 0; j < s.size(); ++j) {
        std::snprintf(buf, sizeof buf, "%zu %.17g %.17g\n", j, s.psi(j).real(),
                      s.psi(j).imag());
        out << buf;
    }
}

}
