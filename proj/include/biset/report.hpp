#ifndef BISET_REPORT_HPP_
#define BISET_REPORT_HPP_

// JSON rendering of reports.  Field order is fixed, so identical inputs give
// byte-identical output.  Everything that varies between runs (timing, worker
// count, seed) is kept out of these objects and goes under "meta".

#include <string>

#include "biset/functor.hpp"
#include "json.hpp"

namespace biset {

  using Json = nlohmann::ordered_json;

  inline constexpr char const* kReportSchema = "biset-report/1";

  //! {"name", "order", "table_hash"}, plus the full "table" when the name
  //! does not rebuild the same Cayley table.
  Json group_json(GroupPtr const& g);
  //! Inverse of group_json; checks the table hash.
  GroupPtr group_from_json(Json const& j);

  Json field_json(FieldSpec f);
  Json subgroup_json(Subgroup const& s);

  //! Self-contained record: both groups, the field, and every term as
  //! canonical element lists (pairs encoded as a * |second| + b) with the
  //! coefficient as an exact fraction or least residue.
  Json      certificate_json(GeneratesCertificate const& cert);
  GeneratesCertificate certificate_from_json(Json const& j);

  Json generates_json(GeneratesReport const& r);
  Json nv_json(NvReport const& r);
  Json section_json(FiniteGroup const& g, Section const& s);

  //! Every certificate found anywhere inside a report.
  std::vector<GeneratesCertificate> certificates_in(Json const& report);

}  // namespace biset

#endif  // BISET_REPORT_HPP_
