class BufferSet {
  enum Scope { global, view, editpane }
}

class BufferSetManager {
  void restore(JEditProperties jEdit) {
    BufferSet.Scope.valueOf(jEdit.getProperty("bufferset.scope", "global"));
  }
}

class JEditProperties {
  String getProperty(String name, String fallback) {
    return fallback;
  }
}
