"""Builds the _igsmac extension through the project's CMake tree."""

import os
import subprocess
import sys
from pathlib import Path

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class CMakeExtension(Extension):
    def __init__(self, name: str):
        super().__init__(name, sources=[])


class CMakeBuild(build_ext):
    def build_extension(self, ext: CMakeExtension) -> None:
        source_dir = Path(__file__).resolve().parent
        ext_path = Path(self.get_ext_fullpath(ext.name)).resolve()
        ext_dir = ext_path.parent
        ext_dir.mkdir(parents=True, exist_ok=True)
        build_dir = Path(self.build_temp).resolve() / "cmake"
        build_dir.mkdir(parents=True, exist_ok=True)

        cfg = "Debug" if self.debug else "Release"
        cmake_args = [
            f"-DCMAKE_BUILD_TYPE={cfg}",
            f"-DPython3_EXECUTABLE={sys.executable}",
            "-DIGSMAC_BUILD_TESTS=OFF",
            "-DIGSMAC_BUILD_CLI=OFF",
            f"-DIGSMAC_PYTHON_OUTPUT_DIR={ext_dir}",
        ]
        try:
            import pybind11

            cmake_args.append(f"-Dpybind11_DIR={pybind11.get_cmake_dir()}")
        except ImportError:
            pass

        env = os.environ.copy()
        subprocess.run(["cmake", "-S", str(source_dir), "-B", str(build_dir)] + cmake_args,
                       check=True, env=env)
        subprocess.run(["cmake", "--build", str(build_dir), "--target", "_igsmac",
                        f"-j{os.cpu_count() or 2}"], check=True, env=env)


setup(
    ext_modules=[CMakeExtension("igsmac._igsmac")],
    cmdclass={"build_ext": CMakeBuild},
)
