#pragma once

#include <string>
#include <vector>

namespace test_support {

// One row per catalog pattern: the fixture wrapping the catalog's own
// instance snippet, the line the snippet sits on, and the expected parts.
struct CatalogRow {
  std::string file;      // under fixtures/catalog_instances/
  std::string pattern;
  std::uint32_t line;    // focal line of the embedded snippet
  std::vector<std::string> parts;
};

inline const std::vector<CatalogRow>& catalog_rows() {
  static const std::vector<CatalogRow> rows = {
      {"BooleanProperty.java", "boolean property", 9, {"isModified"}},
      {"BinaryComparison.java", "binary comparison", 14, {"maxFreq", ">", "wave.getNyquist()"}},
      {"ConstantArgument.java", "constant argument", 13, {"setShowVisibilities", "false"}},
      {"NullCheck.java", "null check", 3, {"name"}},
      {"AssignConstant.java", "assign constant", 5, {"refreshInterval", "15"}},
      {"BinaryFlagCheck.java", "binary flag check", 6, {"flag", "NEW_FILE"}},
      {"IfChain.java", "if chain", 8, {"onset"}},
      {"EqualsOrChain.java", "equals or chain", 3, {"option"}},
      {"PolymorphicMethod.java", "polymorphic method", 7, {"Scriptable.getDefaultValue"}},
      {"NullEmptyCheck.java", "null-empty check", 3, {"string"}},
      {"NullZeroCheck.java", "null-zero check", 3, {"string"}},
      {"ReturnConstant.java", "return constant", 3, {"80"}},
      {"SwitchLenChar.java", "switch-len char", 3, {"token"}},
      {"SelfComparison.java", "self comparison", 3, {"d"}},
      {"StrStarts.java", "str starts", 3, {"arg"}},
      {"NullBooleanCheck.java", "null-boolean check", 3, {"saveAction"}},
      {"Setter.java", "setter", 3,
       {"project.setBasedir", "helperImpl.buildFileParent.getAbsolutePath()"}},
      {"ConstructorAssign.java", "constructor assign", 5, {"authorname"}},
      {"DeltaCheck.java", "delta check", 10, {"getMajor", "getMajor"}},
      {"EnumValueOf.java", "enum valueOf", 7,
       {"jEdit.getProperty(\"bufferset.scope\", \"global\")"}},
      {"IterateAndCheckLiteral.java", "iterate-and-check literal", 5, {"name", "values"}},
      {"ModOp.java", "mod op", 3, {"daysSince19700101"}},
      {"StrEnds.java", "str ends", 5, {"name"}},
      {"SwitchCase.java", "switch case", 5, {"state"}},
      {"OverrideValueSet.java", "override value set", 6, {"getExtension"}},
      {"CastSelfComparison.java", "cast self-comparison", 3, {"d"}},
      {"IndexLoopFind.java", "index loop find", 3, {"values", "value"}},
      {"AssignClassCall.java", "assign class call", 5, {"classname"}},
      {"IfReturnChain.java", "if-return chain", 3, {"compilerType"}},
  };
  return rows;
}

}  // namespace test_support
