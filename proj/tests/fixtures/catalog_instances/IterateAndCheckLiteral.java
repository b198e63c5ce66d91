class ExtensionRegistry {
  ExtensionType[] values;

  void scan(String name) {
    for (ExtensionType value : values) {if (name.equals(value.name())) { mark(); }}
  }

  void mark() {}
}

class ExtensionType {
  String label;

  String name() {
    return label;
  }
}
