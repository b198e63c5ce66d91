class TextChecker {
  boolean hasContent(String string) {
    return string != null && string.length() > 0;
  }
}
