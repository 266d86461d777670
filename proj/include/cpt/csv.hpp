// CSV tables with a '#' provenance header, a header row and a units row.
// Numbers are written with 17 significant digits so doubles round-trip.

#ifndef CPT_CSV_HPP
#define CPT_CSV_HPP

#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace cpt {

using CsvCell = std::variant<double, std::string>;

std::string format_double(double value);

class CsvTable
{
public:
    /// Throws Error(InvalidParams) if the two lists differ in length.
    CsvTable(std::vector<std::string> columns, std::vector<std::string> units);

    void add_provenance(const std::string& key, const std::string& value);
    /// Throws Error(InvalidParams) on a column count mismatch.
    void add_row(std::vector<CsvCell> row);

    const std::vector<std::string>& columns() const { return m_columns; }
    const std::vector<std::vector<CsvCell>>& rows() const { return m_rows; }
    std::size_t column(const std::string& name) const;

    void write(std::ostream& out) const;
    std::string str() const;

private:
    std::vector<std::string> m_columns;
    std::vector<std::string> m_units;
    std::vector<std::pair<std::string, std::string>> m_provenance;
    std::vector<std::vector<CsvCell>> m_rows;
};

}

#endif
