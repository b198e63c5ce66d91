class FieldValidator {
  boolean isBlank(String string) {
    return string == null || string.equals("");
  }
}
