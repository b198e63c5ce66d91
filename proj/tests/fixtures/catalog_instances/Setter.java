class ProjectBinder {
  void bind(Project project, HelperImpl helperImpl) {
    project.setBasedir(helperImpl.buildFileParent.getAbsolutePath());
  }
}

class Project {
  String basedir;

  void setBasedir(String value) {
    basedir = value;
  }
}

class HelperImpl {
  FileRef buildFileParent;
}

class FileRef {
  String path;

  String getAbsolutePath() {
    return path;
  }
}
