class SuffixFilter {
  FileFilter defaultFilter;

  boolean accept(String name) {
    return name.toLowerCase().endsWith("." + defaultFilter.getSuffix());
  }
}

class FileFilter {
  String suffix;

  String getSuffix() {
    return suffix;
  }
}
