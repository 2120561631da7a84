from subprocess import run

run('sphinx-build -a -W -b html . _build/html', shell=True, check=True)
