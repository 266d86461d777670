#include <cpt/csv.hpp>

#include <sstream>

#include <fmt/format.h>

#include <cpt/error.hpp>

namespace cpt {

namespace {

std::string join(const std::vector<std::string>& items)
{
    std::string line;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i > 0)
            line += ',';
        line += items[i];
    }
    return line;
}

}

std::string format_double(double value)
{
    return fmt::format("{:.17g}", value);
}

CsvTable::CsvTable(std::vector<std::string> columns, std::vector<std::string> units)
    : m_columns(std::move(columns)), m_units(std::move(units))
{
    if (m_columns.size() != m_units.size())
        throw Error(ErrorKind::InvalidParams, "csv: columns and units differ in length");
}

void CsvTable::add_provenance(const std::string& key, const std::string& value)
{
    m_provenance.emplace_back(key, value);
}

void CsvTable::add_row(std::vector<CsvCell> row)
{
    if (row.size() != m_columns.size())
        throw Error(ErrorKind::InvalidParams,
                    fmt::format("csv: row has {} cells, expected {}", row.size(), m_columns.size()));
    m_rows.push_back(std::move(row));
}

std::size_t CsvTable::column(const std::string& name) const
{
    for (std::size_t i = 0; i < m_columns.size(); ++i)
        if (m_columns[i] == name)
            return i;
    throw Error(ErrorKind::InvalidParams, "csv: no column '" + name + "'");
}

void CsvTable::write(std::ostream& out) const
{
    for (const auto& [k, v] : m_provenance)
        out << "# " << k << ": " << v << '\n';
    out << join(m_columns) << '\n' << join(m_units) << '\n';
    for (const auto& row : m_rows) {
        std::vector<std::string> cells;
        cells.reserve(row.size());
        for (const auto& cell : row)
            cells.push_back(std::holds_alternative<double>(cell) ? format_double(std::get<double>(cell))
                                                                 : std::get<std::string>(cell));
        out << join(cells) << '\n';
    }
}

std::string CsvTable::str() const
{
    std::ostringstream out;
    write(out);
    return out.str();
}

}
