const EXTERNAL_SMALL: &[u8] = &[137, 80, 78, 71, 13, 10, 26, 10, 0, 0, 0, 13, 73, 72, 68, 82, 0, 0, 0, 3, 0, 0, 0, 2, 8, 2, 0, 0, 0, 18, 22, 241, 77, 0, 0, 0, 24, 73, 68, 65, 84, 120, 218, 99, 252, 207, 192, 192, 8, 198, 76, 220, 34, 114, 26, 198, 54, 110, 1, 209, 0, 51, 172, 4, 200, 249, 55, 134, 199, 0, 0, 0, 0, 73, 69, 78, 68, 174, 66, 96, 130];

const EXTERNAL_GRADIENT: &[u8] = &[137, 80, 78, 71, 13, 10, 26, 10, 0, 0, 0, 13, 73, 72, 68, 82, 0, 0, 0, 32, 0, 0, 0, 32, 8, 2, 0, 0, 0, 252, 24, 237, 163, 0, 0, 2, 230, 73, 68, 65, 84, 120, 218, 213, 209, 233, 143, 83, 101, 20, 128, 241, 83, 198, 14, 90, 146, 185, 196, 183, 51, 166, 137, 115, 131, 233, 144, 52, 50, 77, 244, 142, 201, 65, 105, 50, 118, 72, 10, 158, 6, 172, 196, 11, 82, 196, 186, 212, 229, 186, 28, 151, 10, 116, 128, 10, 84, 176, 42, 69, 168, 98, 85, 234, 194, 226, 1, 5, 151, 113, 223, 21, 193, 93, 4, 119, 4, 14, 16, 5, 197, 141, 132, 45, 1, 245, 131, 18, 255, 6, 27, 115, 147, 231, 251, 243, 225, 7, 0, 48, 56, 8, 109, 33, 104, 183, 224, 212, 48, 68, 35, 112, 186, 13, 103, 70, 97, 100, 12, 122, 227, 144, 114, 96, 28, 194, 133, 9, 152, 146, 132, 203, 83, 224, 165, 225, 166, 12, 204, 112, 225, 182, 44, 44, 200, 65, 53, 15, 247, 121, 176, 140, 97, 69, 1, 158, 40, 194, 179, 37, 120, 185, 12, 111, 85, 224, 189, 42, 124, 90, 131, 47, 235, 176, 173, 1, 129, 22, 24, 114, 124, 208, 188, 6, 29, 31, 52, 183, 86, 232, 8, 182, 180, 54, 175, 19, 254, 253, 64, 243, 2, 11, 176, 35, 136, 157, 33, 236, 178, 112, 68, 24, 157, 8, 158, 109, 227, 185, 81, 28, 19, 195, 241, 113, 116, 29, 188, 24, 241, 138, 4, 94, 155, 196, 155, 83, 88, 76, 227, 156, 12, 222, 225, 226, 162, 44, 46, 205, 97, 35, 143, 43, 61, 124, 146, 113, 160, 128, 175, 20, 241, 237, 18, 190, 95, 198, 77, 21, 252, 170, 138, 219, 107, 248, 125, 29, 127, 110, 96, 224, 100, 232, 243, 57, 114, 27, 56, 62, 71, 182, 129, 135, 7, 185, 59, 196, 61, 22, 159, 19, 230, 100, 132, 199, 218, 124, 126, 148, 39, 198, 120, 106, 156, 243, 14, 95, 135, 124, 75, 130, 251, 147, 60, 55, 197, 149, 52, 223, 147, 225, 251, 93, 126, 56, 203, 171, 114, 188, 54, 207, 207, 121, 252, 42, 243, 59, 5, 254, 160, 200, 159, 149, 248, 235, 50, 239, 168, 240, 15, 85, 254, 165, 198, 7, 234, 124, 180, 193, 129, 211, 160, 223, 231, 200, 237, 48, 206, 231, 200, 113, 144, 179, 130, 50, 42, 36, 125, 150, 156, 23, 150, 76, 68, 38, 217, 114, 73, 84, 174, 140, 201, 245, 113, 41, 56, 50, 19, 101, 94, 66, 238, 76, 202, 226, 148, 212, 211, 242, 72, 70, 30, 119, 101, 93, 86, 158, 207, 201, 107, 121, 89, 239, 201, 135, 44, 155, 11, 242, 77, 81, 180, 36, 123, 202, 242, 107, 69, 14, 86, 229, 88, 77, 254, 174, 75, 107, 67, 2, 103, 192, 128, 207, 145, 59, 193, 243, 57, 114, 2, 116, 116, 80, 41, 164, 23, 88, 122, 81, 88, 115, 17, 189, 202, 214, 27, 162, 122, 107, 76, 103, 197, 181, 236, 232, 93, 168, 75, 18, 250, 64, 82, 31, 77, 169, 164, 245, 169, 140, 190, 224, 234, 235, 89, 125, 55, 167, 31, 229, 117, 139, 167, 223, 178, 238, 44, 232, 222, 162, 254, 86, 210, 67, 101, 253, 163, 162, 80, 213, 193, 53, 109, 171, 107, 123, 67, 3, 189, 176, 207, 231, 200, 93, 48, 223, 231, 200, 105, 48, 19, 130, 102, 114, 200, 92, 106, 153, 171, 195, 134, 35, 102, 154, 109, 102, 71, 205, 237, 49, 115, 119, 220, 212, 28, 243, 32, 154, 199, 18, 102, 117, 210, 60, 157, 50, 47, 166, 205, 27, 25, 179, 193, 53, 31, 103, 205, 231, 57, 179, 53, 111, 118, 121, 230, 71, 54, 191, 23, 204, 225, 162, 249, 179, 100, 2, 101, 115, 98, 197, 88, 85, 211, 81, 51, 157, 117, 211, 213, 48, 129, 241, 96, 251, 28, 185, 27, 134, 253, 87, 158, 11, 254, 31, 228, 44, 208, 101, 65, 186, 38, 68, 55, 90, 52, 61, 76, 165, 8, 205, 183, 105, 97, 148, 238, 141, 209, 67, 113, 90, 238, 208, 26, 164, 103, 18, 244, 82, 146, 222, 76, 209, 198, 52, 125, 146, 161, 47, 92, 250, 46, 75, 187, 115, 244, 83, 158, 246, 123, 116, 132, 233, 175, 2, 13, 42, 210, 73, 37, 26, 90, 166, 83, 42, 100, 87, 105, 120, 141, 186, 235, 212, 211, 160, 192, 84, 112, 155, 138, 252, 15, 8, 61, 47, 255, 175, 123, 60, 3, 0, 0, 0, 0, 73, 69, 78, 68, 174, 66, 96, 130];
