#ifndef RDPER_DIMENSION_TABLE_HPP
#define RDPER_DIMENSION_TABLE_HPP

#include <map>
#include <string>

#include <json.hpp>

namespace rdper {

/// Degree -> dimension; degrees not stored have dimension 0.
class DimensionTable
{
    public:
        DimensionTable() = default;

        void set(int degree, int dim);
        int at(int degree) const;
        int max_degree() const;
        const std::map<int, int>& entries() const { return dims_; }

        bool operator==(const DimensionTable& other) const = default;

        std::string to_string() const;

    private:
        std::map<int, int> dims_;   // only nonzero entries
};

/// {"2": 2, "3": 2}
nlohmann::json to_json(const DimensionTable& table);
DimensionTable dimension_table_from_json(const nlohmann::json& j);

}   // namespace rdper

#endif
