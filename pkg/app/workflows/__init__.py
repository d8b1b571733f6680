# Ce fichier permet à Python de reconnaître le répertoire comme un package
