#ifndef NECROSIM_CSV_HPP
#define NECROSIM_CSV_HPP

#include <fstream>
#include <string>
#include <vector>

#include "necrosim/errors.hpp"

namespace necrosim {

/// Shortest-faithful decimal rendering (deterministic across runs).
std::string format_double(double v);

class CsvWriter {
public:
    CsvWriter(const std::string& path, const std::vector<std::string>& header);

    void write_row(const std::vector<double>& values);
    void write_row_mixed(const std::vector<std::string>& cells);

private:
    std::ofstream out_;
    std::size_t n_cols_;
};

}  // namespace necrosim

#endif
