# Ce fichier permet à Python de reconnaître le répertoire app comme un package 