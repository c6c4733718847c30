#include "rdper/dimension_table.hpp"

#include <sstream>
#include <stdexcept>

namespace rdper {

void DimensionTable::set(int degree, int dim)
{
    if (degree < 0 || dim < 0)
        throw std::invalid_argument("DimensionTable: negative degree or dimension");
    if (dim == 0)
        dims_.erase(degree);
    else
        dims_[degree] = dim;
}

int DimensionTable::at(int degree) const
{
    auto it = dims_.find(degree);
    return it == dims_.end() ? 0 : it->second;
}

int DimensionTable::max_degree() const
{
    return dims_.empty() ? -1 : dims_.rbegin()->first;
}

std::string DimensionTable::to_string() const
{
    std::ostringstream os;
    os << '{';
    bool first = true;
    for (const auto& [deg, dim] : dims_)
    {
        if (!first)
            os << ", ";
        os << deg << ':' << dim;
        first = false;
    }
    os << '}';
    return os.str();
}

nlohmann::json to_json(const DimensionTable& table)
{
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [deg, dim] : table.entries())
        j[std::to_string(deg)] = dim;
    return j;
}

DimensionTable dimension_table_from_json(const nlohmann::json& j)
{
    DimensionTable table;
    for (const auto& [key, value] : j.items())
        table.set(std::stoi(key), value.get<int>());
    return table;
}

}   // namespace rdper
