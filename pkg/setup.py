#!/usr/bin/env python3
"""
Regulated MRS Setup Script
"""

import subprocess
import sys
from pathlib import Path

ENGINE_DIR = Path(__file__).resolve().parent / "engine"


def run_command(command, cwd=None):
    """コマンドを実行"""
    try:
        subprocess.run(command, cwd=cwd, check=True, capture_output=True, text=True)
        print(f"✅ {' '.join(command)}")
        return True
    except subprocess.CalledProcessError as e:
        print(f"❌ {' '.join(command)}")
        print(f"Error: {e.stderr or e.stdout}")
        return False


def setup_engine():
    """エンジンの依存関係をインストール"""
    print("🔧 Setting up engine...")
    if not run_command([sys.executable, "-m", "pip", "install", "-r", "requirements.txt"], cwd=ENGINE_DIR):
        return False
    print("✅ Engine setup completed")
    return True


def check_golden_models():
    """同梱モデルがすべて解析・検証を通るか確認"""
    print("📥 Checking bundled models...")
    models = sorted((ENGINE_DIR / "data" / "models").glob("*.rmrs"))
    ok = True
    for model in models:
        if not run_command([sys.executable, "main.py", "check", str(model)], cwd=ENGINE_DIR):
            ok = False
    print(f"{'✅' if ok else '⚠️'} {len(models)} models checked")
    return ok


def main():
    """メインセットアップ関数"""
    print("🚀 Regulated MRS Setup")
    print("=" * 50)

    if not setup_engine():
        print("❌ Engine setup failed")
        sys.exit(1)

    if not check_golden_models():
        print("⚠️ Some bundled models failed to validate")

    print("\n🎉 Setup completed successfully!")
    print("\n📋 Next steps:")
    print("1. cd engine && python main.py check data/models/basic.rmrs")
    print("2. python main.py enumerate data/models/ordered_pair.rmrs --depth 3")
    print("3. python main.py rm exec data/programs/identity.rm --target cfr --input 3")
    print("4. Run the tests from the repository root: pytest")


if __name__ == "__main__":
    if len(sys.argv) > 1:
        # Invoked by a build frontend (pip / setuptools); metadata lives in pyproject.toml.
        from setuptools import setup

        setup()
    else:
        main()
